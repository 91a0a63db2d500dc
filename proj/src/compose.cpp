#include "hseg/compose.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace hseg {

namespace {

using Pair = std::pair<uint32_t, uint32_t>;

inline Pair ordered(uint32_t a, uint32_t b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// Region bookkeeping shared by the whole composition: a global label
// plane, a union-find over region ids, descriptors valid at the roots and
// the boundary map keyed by (root, root).
struct Builder {
    const DecompositionTree& tree;
    const Raster& img;
    const FilterParams& fparams;
    const EdgeParams& eparams;
    int image_size;

    std::vector<uint32_t> label;
    std::vector<uint32_t> parent;
    std::vector<FeatureDescriptor> fd;
    std::map<Pair, Boundary> bounds;
    std::map<uint32_t, std::set<uint32_t>> nbrs;

    Builder(const DecompositionTree& t, const Raster& im, const FilterParams& fp, const EdgeParams& ep)
        : tree(t), img(im), fparams(fp), eparams(ep),
          image_size(std::max(im.width, im.height)),
          label(static_cast<size_t>(im.width) * im.height, 0) {}

    uint32_t label_at(int x, int y) const { return label[static_cast<size_t>(y) * img.width + x]; }

    uint32_t find(uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    uint32_t new_region(const FeatureDescriptor& d) {
        const uint32_t id = static_cast<uint32_t>(parent.size());
        parent.push_back(id);
        fd.push_back(d);
        return id;
    }

    void add_adjacency(uint32_t a, uint32_t b, uint64_t len) {
        const Pair key = ordered(a, b);
        auto [it, fresh] = bounds.try_emplace(key);
        it->second.length += len;
        if (fresh) {
            nbrs[key.first].insert(key.second);
            nbrs[key.second].insert(key.first);
        }
    }

    // Re-evaluate the queued pairs at scale s; zero-confidence pairs merge,
    // which re-keys their remaining boundaries and queues every boundary of
    // the grown region for recomputation at this scale.
    void evaluate(std::deque<Pair> work, double s) {
        while (!work.empty()) {
            auto [a0, b0] = work.front();
            work.pop_front();
            const uint32_t a = find(a0), b = find(b0);
            if (a == b)
                continue;
            const Pair key = ordered(a, b);
            const auto it = bounds.find(key);
            if (it == bounds.end())
                continue; // stale entry from an earlier merge
            const double x = similarity(fd[a], fd[b], fparams.measure);
            const double c = boundary_confidence(s, x, fparams);
            if (c > 0.0) {
                it->second.cnf = c;
                continue;
            }

            bounds.erase(it);
            nbrs[a].erase(b);
            nbrs[b].erase(a);
            // union by pixel count, ties to the lower id
            uint32_t root = a, gone = b;
            if (fd[b].count > fd[a].count || (fd[b].count == fd[a].count && b < a)) {
                root = b;
                gone = a;
            }
            parent[gone] = root;
            fd[root] = fd[root] + fd[gone];

            auto gn = nbrs.find(gone);
            if (gn != nbrs.end()) {
                const std::set<uint32_t> moved = std::move(gn->second);
                nbrs.erase(gn);
                for (uint32_t other : moved) {
                    auto node = bounds.extract(ordered(gone, other));
                    const Pair nk = ordered(root, other);
                    auto [it2, fresh] = bounds.try_emplace(nk);
                    it2->second.length += node.mapped().length;
                    nbrs[other].erase(gone);
                    if (fresh) {
                        nbrs[other].insert(root);
                        nbrs[root].insert(other);
                    }
                }
            }
            for (uint32_t other : nbrs[root])
                work.emplace_back(root, other);
        }
    }

    void leaf(const DecompNode& node) {
        const Window& win = node.window;
        if (node.kind == NodeKind::ChaosLeaf) {
            FeatureDescriptor d;
            for (int y = win.y0; y < win.y0 + win.h; ++y)
                for (int x = win.x0; x < win.x0 + win.w; ++x)
                    d.add(img.at(x, y));
            const uint32_t id = new_region(d);
            for (int y = win.y0; y < win.y0 + win.h; ++y)
                for (int x = win.x0; x < win.x0 + win.w; ++x)
                    label[static_cast<size_t>(y) * img.width + x] = id;
            return;
        }

        const std::vector<uint8_t> mask = detect_edges(img, win, eparams);
        const LeafRegions regions = extract_regions(img, win, mask);
        const uint32_t base = static_cast<uint32_t>(parent.size());
        for (const FeatureDescriptor& d : regions.descriptors)
            new_region(d);
        for (int y = 0; y < win.h; ++y)
            for (int x = 0; x < win.w; ++x)
                label[static_cast<size_t>(win.y0 + y) * img.width + (win.x0 + x)] =
                    base + regions.labels[static_cast<size_t>(y) * win.w + x];

        std::deque<Pair> work;
        for (const auto& [pair, len] : regions.adjacency) {
            add_adjacency(base + pair.first, base + pair.second, len);
            work.emplace_back(base + pair.first, base + pair.second);
        }
        evaluate(std::move(work), relative_scale(win.longer_side(), image_size));
    }

    void combine(const DecompNode& node) {
        const Window& win = node.window;
        const int xm = win.x0 + (win.w + 1) / 2;
        const int ym = win.y0 + (win.h + 1) / 2;

        std::map<Pair, uint64_t> seam;
        for (int y = win.y0; y < win.y0 + win.h; ++y) {
            const uint32_t a = find(label_at(xm - 1, y));
            const uint32_t b = find(label_at(xm, y));
            if (a != b)
                ++seam[ordered(a, b)];
        }
        for (int x = win.x0; x < win.x0 + win.w; ++x) {
            const uint32_t a = find(label_at(x, ym - 1));
            const uint32_t b = find(label_at(x, ym));
            if (a != b)
                ++seam[ordered(a, b)];
        }

        std::deque<Pair> work;
        for (const auto& [pair, len] : seam) {
            add_adjacency(pair.first, pair.second, len);
            work.push_back(pair);
        }
        evaluate(std::move(work), relative_scale(win.longer_side(), image_size));
    }

    void process(int32_t idx) {
        const DecompNode& node = tree.nodes[idx];
        if (node.kind == NodeKind::Internal) {
            for (int32_t child : node.children)
                process(child);
            combine(node);
        } else {
            leaf(node);
        }
    }

    RegionGraph finalize() {
        RegionGraph g;
        g.width = img.width;
        g.height = img.height;
        g.image_size = image_size;
        g.labels = LabelMap(img.width, img.height);

        // Final ids in raster-scan order of each segment's first pixel.
        std::map<uint32_t, uint32_t> remap;
        for (size_t i = 0; i < label.size(); ++i) {
            const uint32_t root = find(label[i]);
            auto [it, fresh] = remap.try_emplace(root, static_cast<uint32_t>(remap.size()));
            g.labels.labels[i] = it->second;
        }
        g.segments.resize(remap.size());
        for (const auto& [root, id] : remap)
            g.segments[id] = fd[root];
        for (const auto& [pair, b] : bounds) {
            const uint32_t i = remap.at(find(pair.first));
            const uint32_t j = remap.at(find(pair.second));
            g.boundaries[ordered(i, j)] = b;
        }
        return g;
    }
};

} // namespace

RegionGraph compose(const DecompositionTree& tree, const Raster& img,
                    const FilterParams& params, const EdgeParams& edges) {
    if (tree.nodes.empty())
        throw std::invalid_argument("empty decomposition tree");
    const Window& root = tree.nodes[tree.root].window;
    if (root.w != img.width || root.h != img.height)
        throw std::invalid_argument("tree does not match the raster");
    Builder builder(tree, img, params, edges);
    builder.process(tree.root);
    return builder.finalize();
}

std::vector<uint8_t> boundary_image(const RegionGraph& graph) {
    const int w = graph.width, h = graph.height;
    std::vector<uint8_t> out(static_cast<size_t>(w) * h, 0);
    auto stamp = [&](size_t i, size_t j, uint32_t la, uint32_t lb) {
        const auto it = graph.boundaries.find(ordered(la, lb));
        if (it == graph.boundaries.end())
            return;
        const uint8_t v = static_cast<uint8_t>(std::lround(it->second.cnf * 255.0));
        out[i] = std::max(out[i], v);
        out[j] = std::max(out[j], v);
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            const uint32_t la = graph.labels.labels[i];
            if (x + 1 < w && graph.labels.labels[i + 1] != la)
                stamp(i, i + 1, la, graph.labels.labels[i + 1]);
            if (y + 1 < h && graph.labels.labels[i + w] != la)
                stamp(i, i + w, la, graph.labels.labels[i + w]);
        }
    }
    return out;
}

Raster render_mean_colors(const Raster& img, const LabelMap& labels) {
    if (labels.width != img.width || labels.height != img.height)
        throw std::invalid_argument("label map does not match the raster");
    std::vector<FeatureDescriptor> acc(labels.region_count());
    for (size_t i = 0; i < img.pixels.size(); ++i)
        acc[labels.labels[i]].add(img.pixels[i]);
    Raster out(img.width, img.height);
    std::vector<Rgb> mean(acc.size());
    for (size_t s = 0; s < acc.size(); ++s) {
        if (acc[s].count == 0)
            continue;
        mean[s] = {static_cast<uint8_t>(std::lround(acc[s].mean_r())),
                   static_cast<uint8_t>(std::lround(acc[s].mean_g())),
                   static_cast<uint8_t>(std::lround(acc[s].mean_b()))};
    }
    for (size_t i = 0; i < out.pixels.size(); ++i)
        out.pixels[i] = mean[labels.labels[i]];
    return out;
}

} // namespace hseg
