#include "hseg/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hseg {

namespace {

// (1 - e^-u) / (1 + e^-u), the [0,1)-ranged sigmoid both filters build on.
// Exactly 0 at u=0; expm1 keeps small u accurate.
double sig(double u) {
    return -std::expm1(-u) / (1.0 + std::exp(-u));
}

void validate(const FilterParams& params) {
    if (params.scale_damping <= 0.0 || params.similarity_damping <= 0.0 || params.amplitude <= 0.0)
        throw std::invalid_argument("filter coefficients must be positive");
    if (!(params.similarity_threshold > 0.0 && params.similarity_threshold <= 1.0))
        throw std::invalid_argument("similarity threshold must be in (0,1]");
}

} // namespace

double relative_scale(int partition_size, int image_size) {
    if (partition_size < 1 || image_size < 1)
        throw std::invalid_argument("sizes must be positive");
    if (partition_size > image_size)
        throw std::invalid_argument("partition larger than the image");
    return static_cast<double>(partition_size) / image_size;
}

double scale_filter(double s, const FilterParams& params) {
    validate(params);
    return sig(params.scale_damping * s);
}

double similarity(const FeatureDescriptor& a, const FeatureDescriptor& b, SimilarityMeasure measure) {
    const double av[3] = {a.mean_r(), a.mean_g(), a.mean_b()};
    const double bv[3] = {b.mean_r(), b.mean_g(), b.mean_b()};
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < 3; ++i) {
        dot += av[i] * bv[i];
        na += av[i] * av[i];
        nb += bv[i] * bv[i];
    }
    if (na == 0.0 && nb == 0.0)
        return 1.0; // two black regions
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    double x = 0.0;
    switch (measure) {
    case SimilarityMeasure::Cosine:
        x = dot / std::sqrt(na * nb);
        break;
    case SimilarityMeasure::Dice:
        x = 2.0 * dot / (na + nb);
        break;
    case SimilarityMeasure::Jaccard:
        x = dot / (na + nb - dot);
        break;
    case SimilarityMeasure::Overlap:
        x = dot / std::min(na, nb);
        break;
    }
    return std::clamp(x, 0.0, 1.0);
}

double similarity_filter(double x, double s, const FilterParams& params) {
    validate(params);
    if (x >= params.similarity_threshold)
        return 0.0;
    const double y = params.amplitude * sig(params.similarity_damping * s) / sig(params.similarity_damping);
    if (y == 0.0)
        return 1.0 - x; // s -> 0 limit of sig(y(1-x))/sig(y)
    return sig(y * (1.0 - x)) / sig(y);
}

double similarity_filter_unscaled(double x, const FilterParams& params) {
    validate(params);
    if (x >= params.similarity_threshold)
        return 0.0;
    return sig(params.similarity_damping * (1.0 - x)) / sig(params.similarity_damping);
}

double boundary_confidence(double s, double x, const FilterParams& params) {
    return scale_filter(s, params) * similarity_filter(x, s, params);
}

} // namespace hseg
