#pragma once

#include "hseg/leafseg.hpp"

namespace hseg {

enum class SimilarityMeasure { Cosine, Dice, Jaccard, Overlap };

struct FilterParams {
    double scale_damping = 8.0;       // beta1
    double similarity_damping = 3.0;  // beta2
    double amplitude = 1.0;           // alpha
    double similarity_threshold = 0.994; // t
    SimilarityMeasure measure = SimilarityMeasure::Cosine;
};

/// Relative scale of a partition: z/L where both sizes are the longer side
/// in pixels. Throws on z < 1 or z > L.
double relative_scale(int partition_size, int image_size);

/// Scale filter 2/(1+e^(-beta1*s)) - 1: strictly increasing on [0,1],
/// 0 at s=0, saturating toward 1.
double scale_filter(double s, const FilterParams& params);

/// Similarity of two region descriptors over their mean-RGB vectors,
/// in [0,1]. Two zero vectors compare as 1.
double similarity(const FeatureDescriptor& a, const FeatureDescriptor& b,
                  SimilarityMeasure measure = SimilarityMeasure::Cosine);

/// Scale-aware similarity filter: 0 for x >= threshold, otherwise a
/// normalized sigmoid in (1-x) whose steepness grows with s. Equal to 1 at
/// x=0 for every scale.
double similarity_filter(double x, double s, const FilterParams& params);

/// The scale-independent variant (steepness fixed by beta2). The pipeline
/// uses similarity_filter; this one is kept for analysis.
double similarity_filter_unscaled(double x, const FilterParams& params);

/// Boundary confidence: scale_filter(s) * similarity_filter(x, s).
double boundary_confidence(double s, double x, const FilterParams& params);

} // namespace hseg
