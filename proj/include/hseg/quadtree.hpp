#pragma once

#include <array>
#include <string>
#include <vector>

#include "hseg/entropy.hpp"
#include "hseg/raster.hpp"

namespace hseg {

struct DecompParams {
    NoiseModel model;
    int chaos_threshold = 3; // l: windows with min side below this stop as chaos
    int bins = 64;
};

enum class NodeKind { Internal, ChaosLeaf, NonChaosLeaf };

struct DecompNode {
    Window window;
    NodeKind kind = NodeKind::NonChaosLeaf;
    double entropy = 0.0; // histogram entropy of the window
    std::array<int32_t, 4> children{-1, -1, -1, -1};

    bool is_leaf() const { return kind != NodeKind::Internal; }
};

/// Unbalanced quadtree over the image; node 0 is the root covering the
/// whole raster. Children of an internal node tile its window exactly.
struct DecompositionTree {
    std::vector<DecompNode> nodes;
    int32_t root = 0;
};

/// Quarter a window. The first half of an odd extent takes ceil(extent/2).
/// Order: top-right, top-left, bottom-left, bottom-right. Throws when a
/// side is below 2 pixels.
std::array<Window, 4> quadrant_split(const Window& win);

/// Recursive top-down decomposition: a window stops as a chaos leaf when
/// its min side is below the chaos threshold, stops as a non-chaos leaf
/// when its histogram entropy is within the noise bound, and is quartered
/// otherwise.
DecompositionTree decompose(const Raster& img, const DecompParams& params);

struct LeafCounts {
    int non_chaos = 0;
    int chaos = 0;
};

LeafCounts count_leaves(const DecompositionTree& tree);

int tree_depth(const DecompositionTree& tree); // edges from root to deepest node

/// JSON dump of the tree: window rects, node kinds, per-node entropy.
std::string quadtree_to_json(const DecompositionTree& tree);

} // namespace hseg
