#include "hseg/quadtree.hpp"

#include <stdexcept>

#include "json.hpp"

namespace hseg {

std::array<Window, 4> quadrant_split(const Window& win) {
    if (win.w < 2 || win.h < 2)
        throw std::invalid_argument("window too small to split");
    const int wl = (win.w + 1) / 2; // first half takes the ceil
    const int ht = (win.h + 1) / 2;
    const int wr = win.w - wl;
    const int hb = win.h - ht;
    const int xm = win.x0 + wl;
    const int ym = win.y0 + ht;
    // top-right, top-left, bottom-left, bottom-right
    return {Window{xm, win.y0, wr, ht},
            Window{win.x0, win.y0, wl, ht},
            Window{win.x0, ym, wl, hb},
            Window{xm, ym, wr, hb}};
}

DecompositionTree decompose(const Raster& img, const DecompParams& params) {
    if (img.empty())
        throw std::invalid_argument("cannot decompose an empty raster");
    if (params.chaos_threshold < 1)
        throw std::invalid_argument("chaos threshold must be at least 1");

    const std::vector<uint8_t> plane = luminance_plane(img);
    const double bound = noise_bound(params.model);

    DecompositionTree tree;
    tree.nodes.reserve(64);

    // Recursion depth is bounded by log2 of the image side.
    auto build = [&](auto&& self, const Window& win) -> int32_t {
        const int32_t idx = static_cast<int32_t>(tree.nodes.size());
        tree.nodes.push_back({});
        Histogram hist = luminance_histogram(plane, img.width, win, params.bins);
        const double h = histogram_entropy(hist);

        NodeKind kind;
        if (win.shorter_side() < params.chaos_threshold) {
            kind = NodeKind::ChaosLeaf;
        } else if (h <= bound) {
            kind = NodeKind::NonChaosLeaf;
        } else if (win.w >= 2 && win.h >= 2) {
            kind = NodeKind::Internal;
        } else {
            // 1-pixel-wide strip that fails the bound but cannot be
            // quartered; only reachable with chaos_threshold == 1.
            kind = NodeKind::ChaosLeaf;
        }
        tree.nodes[idx].window = win;
        tree.nodes[idx].kind = kind;
        tree.nodes[idx].entropy = h;

        if (kind == NodeKind::Internal) {
            const std::array<Window, 4> quads = quadrant_split(win);
            std::array<int32_t, 4> children{};
            for (int q = 0; q < 4; ++q)
                children[q] = self(self, quads[q]);
            tree.nodes[idx].children = children;
        }
        return idx;
    };

    build(build, Window{0, 0, img.width, img.height});
    return tree;
}

LeafCounts count_leaves(const DecompositionTree& tree) {
    LeafCounts counts;
    for (const DecompNode& node : tree.nodes) {
        if (node.kind == NodeKind::NonChaosLeaf)
            ++counts.non_chaos;
        else if (node.kind == NodeKind::ChaosLeaf)
            ++counts.chaos;
    }
    return counts;
}

int tree_depth(const DecompositionTree& tree) {
    int deepest = 0;
    auto walk = [&](auto&& self, int32_t idx, int depth) -> void {
        deepest = std::max(deepest, depth);
        const DecompNode& node = tree.nodes[idx];
        if (node.kind == NodeKind::Internal) {
            for (int32_t child : node.children)
                self(self, child, depth + 1);
        }
    };
    walk(walk, tree.root, 0);
    return deepest;
}

std::string quadtree_to_json(const DecompositionTree& tree) {
    nlohmann::json doc;
    doc["root"] = tree.root;
    nlohmann::json nodes = nlohmann::json::array();
    for (const DecompNode& node : tree.nodes) {
        nlohmann::json n;
        n["rect"] = {node.window.x0, node.window.y0, node.window.w, node.window.h};
        n["entropy"] = node.entropy;
        switch (node.kind) {
        case NodeKind::Internal:
            n["kind"] = "internal";
            n["children"] = node.children;
            break;
        case NodeKind::ChaosLeaf:
            n["kind"] = "chaos";
            break;
        case NodeKind::NonChaosLeaf:
            n["kind"] = "non-chaos";
            break;
        }
        nodes.push_back(std::move(n));
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(2);
}

} // namespace hseg
