#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hseg/raster.hpp"

namespace hseg {

/// Feature-value counts over a fixed partition of the value range.
struct Histogram {
    std::vector<uint64_t> counts;
    uint64_t total = 0;

    Histogram() = default;
    explicit Histogram(size_t bins) : counts(bins, 0) {}

    void add(size_t bin) { ++counts[bin]; ++total; }
    size_t bin_count() const { return counts.size(); }
};

/// Parameters of the noise-tolerant stopping bound: k dominant segments
/// expected to cover fraction `dominant_area` of a window, the rest split
/// among `noise_count` noise segments. `noise_threshold` is informational
/// only; the bound consumes (dominant_area, noise_count).
struct NoiseModel {
    int dominant_count = 3;       // k
    double dominant_area = 0.998; // in (0,1]
    int noise_count = 3;          // k'
    double noise_threshold = 0.0;
};

/// Shannon entropy in nats of a probability vector; 0*ln0 counts as 0.
double entropy(std::span<const double> probs);

/// Entropy of the bin distribution. Throws std::invalid_argument on an
/// empty histogram.
double histogram_entropy(const Histogram& hist);

/// Area-weighted entropy of a labeling, -sum (S_i/S) ln (S_i/S). Intended
/// as the brute-force reference for the histogram-entropy lower bound; the
/// caller is responsible for labels denoting connected regions.
double segment_entropy(const LabelMap& labels);

/// Upper bound on window entropy under the noise model:
/// -(a ln(a/k) + (1-a) ln((1-a)/k')). Equals ln k at a=1 and stays above
/// ln k whenever the noise share is small, the regime the model is for.
double noise_bound(const NoiseModel& model);

/// noise_bound minus ln k, clamped at zero.
double noise_redundancy(const NoiseModel& model);

/// True when the window's histogram entropy does not exceed the bound,
/// i.e. the decomposition may stop here.
bool stopping_holds(const Histogram& hist, const NoiseModel& model);

/// Histogram of window luminance over `bins` uniform-width bins spanning [0,255].
Histogram luminance_histogram(const Raster& img, const Window& win, int bins);
Histogram luminance_histogram(const std::vector<uint8_t>& plane, int stride, const Window& win, int bins);

} // namespace hseg
