#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hseg/filters.hpp"
#include "hseg/quadtree.hpp"

namespace hseg {

struct Boundary {
    double cnf = 0.0;    // confidence in (0,1]; zero-confidence pairs are merged away
    uint64_t length = 0; // 4-adjacent pixel pairs across the boundary
};

/// Initial segmentation: per-pixel segment ids, one descriptor per segment
/// and the confidence-weighted adjacency between segments. Segment ids are
/// assigned in raster-scan order of each segment's first pixel.
struct RegionGraph {
    int width = 0;
    int height = 0;
    int image_size = 0; // longer side of the source image
    std::vector<FeatureDescriptor> segments;
    std::map<std::pair<uint32_t, uint32_t>, Boundary> boundaries; // key i<j
    LabelMap labels;

    size_t segment_count() const { return segments.size(); }
};

/// Bottom-up composition over a decomposition tree. Leaves contribute
/// their local regions (chaos leaves as a single region); at every
/// internal node the four child fragments are stitched along the two
/// seams, zero-confidence neighbors merge, and confidences incident to a
/// changed region are recomputed at the node's scale.
RegionGraph compose(const DecompositionTree& tree, const Raster& img,
                    const FilterParams& params, const EdgeParams& edges = {});

/// Grayscale boundary rendering: pixels on either side of an inter-segment
/// boundary carry round(cnf*255), everything else 0.
std::vector<uint8_t> boundary_image(const RegionGraph& graph);

/// Paint every label with the mean color of its pixels.
Raster render_mean_colors(const Raster& img, const LabelMap& labels);

} // namespace hseg
