#include "doctest.h"

#include <random>

#include "hseg/pipeline.hpp"
#include "testutil.hpp"

using namespace hseg;

TEST_SUITE("pipeline") {

TEST_CASE("optimization point of quiet images is the smallest allowed k") {
    const DecompParams params;
    CHECK(find_optimization_point(testutil::flat(32, 32, {50, 90, 130}), params) == 3);
    const Raster bands = testutil::vertical_bands(64, 64, {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}});
    CHECK(find_optimization_point(bands, params) == 3);
}

TEST_CASE("optimization point on noisy tiles matches the exhaustive scan") {
    const Raster img = testutil::checkerboard_noise(32, 32, 9001);
    DecompParams params;
    const int found = find_optimization_point(img, params);
    REQUIRE(found >= 3);

    auto chaos_at = [&](int k) {
        params.model.dominant_count = k;
        return count_leaves(decompose(img, params)).chaos;
    };
    CHECK(chaos_at(found) == 0);
    CHECK(found > 3); // the image is noisy enough that k=3 keeps chaos leaves
    CHECK(chaos_at(found - 1) > 0);
    for (int k = 3; k < found; ++k)
        CHECK(chaos_at(k) > 0); // exhaustive minimality
}

TEST_CASE("optimization point survives a deep doubling search on pixel noise") {
    const Raster img = testutil::pixel_noise(32, 32, 1234);
    DecompParams params;
    const int found = find_optimization_point(img, params);
    auto chaos_at = [&](int k) {
        params.model.dominant_count = k;
        return count_leaves(decompose(img, params)).chaos;
    };
    REQUIRE(found > 6); // forces at least one doubling step past the first bracket
    CHECK(chaos_at(found) == 0);
    for (int k = 3; k < found; ++k)
        CHECK(chaos_at(k) > 0);
}

TEST_CASE("auto-k feeds the pipeline") {
    const Raster img = testutil::checkerboard_noise(16, 16, 42);
    PipelineConfig cfg;
    cfg.auto_k = true;
    const PipelineResult res = run_pipeline(img, cfg);
    CHECK(res.k_used == find_optimization_point(img, cfg.decomp));
    CHECK(count_leaves(res.tree).chaos == 0);
    CHECK(res.graph.segment_count() >= 1);
    CHECK(res.merge_tree.leaf_count == res.graph.segment_count());
}

TEST_CASE("presets") {
    PipelineConfig cfg;
    apply_preset(cfg, "steep");
    CHECK(cfg.filters.similarity_damping == 10.0);
    CHECK(cfg.filters.amplitude == 20.0);
    CHECK(cfg.filters.scale_damping == 8.0);
    apply_preset(cfg, "default");
    CHECK(cfg.filters.similarity_damping == 3.0);
    CHECK(cfg.filters.amplitude == 1.0);
    CHECK(cfg.filters.similarity_threshold == 0.994);
    CHECK_THROWS(apply_preset(cfg, "nope"));
}

TEST_CASE("identical runs produce identical artifacts") {
    const Raster img = testutil::natural_synthetic(48, 40, 77);
    const PipelineConfig cfg;
    const PipelineResult a = run_pipeline(img, cfg);
    const PipelineResult b = run_pipeline(img, cfg);
    CHECK(a.graph.labels.labels == b.graph.labels.labels);
    CHECK(quadtree_to_json(a.tree) == quadtree_to_json(b.tree));
    CHECK(merge_tree_to_json(a.merge_tree) == merge_tree_to_json(b.merge_tree));
    const LabelMap cut_a = cut_by_count(a.merge_tree, a.graph.labels, 4);
    const LabelMap cut_b = cut_by_count(b.merge_tree, b.graph.labels, 4);
    CHECK(cut_a.labels == cut_b.labels);
}

TEST_CASE("full-count cut restores the initial segmentation") {
    const Raster img = testutil::natural_synthetic(32, 32, 5);
    const PipelineResult res = run_pipeline(img, {});
    const LabelMap cut = cut_by_count(res.merge_tree, res.graph.labels,
                                      static_cast<uint32_t>(res.graph.segment_count()));
    CHECK(cut.labels == res.graph.labels.labels);
}

} // TEST_SUITE
