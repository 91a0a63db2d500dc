#pragma once

#include "hseg/raster.hpp"

namespace hseg {

/// Unsupervised segmentation scores. e is h_r + h_l by definition.
struct EvalReport {
    double q = 0.0;
    double h_r = 0.0;
    double h_l = 0.0;
    double e = 0.0;
    uint32_t regions = 0;
};

/// Intra-region color-error score
/// (sqrt(R)/(1000*N*M)) * sum_i [ e_i^2/(1+log10 S_i) + (R(S_i)/S_i)^2 ],
/// where e_i^2 sums squared RGB deviations from the segment mean and
/// R(S_i) counts segments with area exactly S_i. Lower is better.
double q_metric(const Raster& img, const LabelMap& labels);

/// Area-weighted within-segment luminance entropy (nats), luminance
/// quantized to `bins` uniform bins.
double h_r(const Raster& img, const LabelMap& labels, int bins = 64);

/// Segment-area entropy -sum (S_i/S) ln (S_i/S).
double h_l(const LabelMap& labels);

/// h_r + h_l.
double e_metric(const Raster& img, const LabelMap& labels, int bins = 64);

EvalReport evaluate(const Raster& img, const LabelMap& labels, int bins = 64);

} // namespace hseg
