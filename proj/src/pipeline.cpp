#include "hseg/pipeline.hpp"

#include <stdexcept>

namespace hseg {

void apply_preset(PipelineConfig& cfg, const std::string& name) {
    if (name == "default") {
        cfg.filters.scale_damping = 8.0;
        cfg.filters.similarity_damping = 3.0;
        cfg.filters.amplitude = 1.0;
        cfg.filters.similarity_threshold = 0.994;
    } else if (name == "steep") {
        cfg.filters.scale_damping = 8.0;
        cfg.filters.similarity_damping = 10.0;
        cfg.filters.amplitude = 20.0;
        cfg.filters.similarity_threshold = 0.994;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
}

PipelineResult run_pipeline(const Raster& img, const PipelineConfig& cfg) {
    PipelineResult result;
    DecompParams decomp = cfg.decomp;
    if (cfg.auto_k)
        decomp.model.dominant_count = find_optimization_point(img, decomp);
    result.k_used = decomp.model.dominant_count;
    result.tree = decompose(img, decomp);
    result.graph = compose(result.tree, img, cfg.filters, cfg.edges);
    result.merge_tree = build_merge_tree(result.graph);
    return result;
}

int find_optimization_point(const Raster& img, DecompParams params) {
    const long long mn = img.pixel_count();
    auto chaos_count = [&](long long k) {
        params.model.dominant_count = static_cast<int>(k);
        return count_leaves(decompose(img, params)).chaos;
    };

    if (mn < 3)
        return static_cast<int>(mn);
    if (chaos_count(3) == 0)
        return 3;

    // Chaos-leaf count is non-increasing in k: grow an upper bracket by
    // doubling, then binary search for the first zero.
    long long lo = 3, hi = 6;
    while (hi < mn && chaos_count(hi) > 0) {
        lo = hi;
        hi = std::min(hi * 2, mn);
    }
    if (hi >= mn && chaos_count(hi) > 0)
        return static_cast<int>(mn); // no k in range removes all chaos leaves
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (chaos_count(mid) == 0)
            hi = mid;
        else
            lo = mid;
    }
    return static_cast<int>(hi);
}

} // namespace hseg
