#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hseg/compose.hpp"

namespace hseg {

/// Node of the binary merge hierarchy. Internal nodes carry the confidence
/// weight assigned to both links toward their children; leaves map to
/// initial segments.
struct MergeTreeNode {
    int32_t left = -1;
    int32_t right = -1;
    int32_t parent = -1;
    int32_t depth = 0;      // edges from the root
    int32_t segment = -1;   // leaf payload
    double weight = 0.0;    // link weight toward children (internal nodes)
    bool synthetic = false; // joins disconnected components, weight 1.0

    bool is_leaf() const { return left < 0; }
};

/// Binary merge tree whose links are weighted by boundary confidence.
/// Nodes 0..leaf_count-1 are the leaves (node id == segment id); internal
/// nodes follow in creation order, so a parent id always exceeds its
/// children's ids and parent link weights are never below child link
/// weights.
struct MergeTree {
    std::vector<MergeTreeNode> nodes;
    int32_t root = -1;
    uint32_t leaf_count = 0;
};

/// Greedy bottom-up construction: boundaries are consumed in ascending
/// confidence order (ties by segment pair); each step joins two clusters
/// under a parent weighted by the consumed confidence, re-keys the
/// remaining boundaries and keeps the smaller confidence when two collapse
/// onto the same pair. Disconnected components are chained under synthetic
/// nodes at weight 1.0.
MergeTree build_merge_tree(const RegionGraph& graph);

/// Keep every merge with weight <= t_visual; a segment survives the cut
/// while the link into it is stronger than t_visual. t=1 shows the whole
/// image as one segment, t=0 restores the initial segmentation.
LabelMap cut_by_threshold(const MergeTree& tree, const LabelMap& base, double t_visual);

/// Split the n-1 strongest internal nodes (ties: shallower first, then
/// lower id), producing exactly n segments. Throws when n is outside
/// [1, leaf_count].
LabelMap cut_by_count(const MergeTree& tree, const LabelMap& base, uint32_t n_visual);

std::string merge_tree_to_json(const MergeTree& tree);
MergeTree merge_tree_from_json(const std::string& text);

} // namespace hseg
