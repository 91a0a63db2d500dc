#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "hseg/raster.hpp"

namespace hseg {

/// Additive region summary: pixel count plus per-channel sums. Means are
/// exposed as sum/count so that merging two descriptors is exact.
struct FeatureDescriptor {
    uint64_t count = 0;
    uint64_t sum_r = 0;
    uint64_t sum_g = 0;
    uint64_t sum_b = 0;

    void add(Rgb p) {
        ++count;
        sum_r += p.r;
        sum_g += p.g;
        sum_b += p.b;
    }
    double mean_r() const { return static_cast<double>(sum_r) / count; }
    double mean_g() const { return static_cast<double>(sum_g) / count; }
    double mean_b() const { return static_cast<double>(sum_b) / count; }

    friend FeatureDescriptor operator+(const FeatureDescriptor& a, const FeatureDescriptor& b) {
        return {a.count + b.count, a.sum_r + b.sum_r, a.sum_g + b.sum_g, a.sum_b + b.sum_b};
    }
    friend bool operator==(const FeatureDescriptor&, const FeatureDescriptor&) = default;
};

struct EdgeParams {
    double sigma = 1.0; // Gaussian smoothing
    double low = 0.1;   // hysteresis thresholds, fractions of the max gradient
    double high = 0.2;
};

/// Canny-style edge mask for one window: smooth, Sobel, non-maximum
/// suppression, double-threshold hysteresis. Returns w*h flags, row-major
/// within the window. A flat window yields an all-false mask.
std::vector<uint8_t> detect_edges(const Raster& img, const Window& win, const EdgeParams& params);

enum class BorderSide : uint8_t { Left = 0, Right = 1, Top = 2, Bottom = 3 };

/// Local regions of one leaf window. Pixel sets are carried by `labels`
/// (window-local ids, every pixel assigned); `adjacency` holds the shared
/// boundary length of each region pair and `border` the contact length of
/// each region with the four window sides.
struct LeafRegions {
    int width = 0;
    int height = 0;
    std::vector<uint32_t> labels;
    std::vector<FeatureDescriptor> descriptors;
    std::map<std::pair<uint32_t, uint32_t>, uint64_t> adjacency; // key i<j, value = boundary pixel pairs
    std::array<std::map<uint32_t, uint64_t>, 4> border;          // indexed by BorderSide

    size_t region_count() const { return descriptors.size(); }
};

/// Partition a window into 4-connected regions separated by the edge mask.
/// Edge pixels are absorbed into the 4-adjacent region whose mean color is
/// closest, so contours that fail to close disappear and every pixel ends
/// up in exactly one region.
LeafRegions extract_regions(const Raster& img, const Window& win, const std::vector<uint8_t>& edges);

} // namespace hseg
