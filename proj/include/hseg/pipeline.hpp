#pragma once

#include <optional>
#include <string>

#include "hseg/compose.hpp"
#include "hseg/merge_tree.hpp"
#include "hseg/quadtree.hpp"

namespace hseg {

struct PipelineConfig {
    DecompParams decomp;
    FilterParams filters;
    EdgeParams edges;
    bool auto_k = false; // replace decomp.model.dominant_count by the optimization point
};

/// Apply a named parameter preset. "default" keeps the tuned defaults
/// (beta1=8, beta2=3, alpha=1, t=0.994); "steep" switches the similarity
/// filter to beta2=10, alpha=20 for a sharper confidence falloff. Throws
/// on unknown names.
void apply_preset(PipelineConfig& cfg, const std::string& name);

struct PipelineResult {
    DecompositionTree tree;
    RegionGraph graph;
    MergeTree merge_tree;
    int k_used = 0;
};

/// decompose -> compose -> merge tree. Cuts and renderings are applied by
/// the caller.
PipelineResult run_pipeline(const Raster& img, const PipelineConfig& cfg);

/// Smallest k >= 3 whose decomposition has zero chaos leaves (the count is
/// non-increasing in k, so a doubling probe plus binary search finds it).
/// Falls back to width*height when no k in range works.
int find_optimization_point(const Raster& img, DecompParams params);

} // namespace hseg
