#include "hseg/eval.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace hseg {

namespace {

struct SegmentStats {
    uint64_t area = 0;
    uint64_t sum[3] = {0, 0, 0};
    uint64_t sumsq[3] = {0, 0, 0};
};

std::vector<SegmentStats> collect(const Raster& img, const LabelMap& labels) {
    if (labels.width != img.width || labels.height != img.height)
        throw std::invalid_argument("label map does not match the raster");
    std::vector<SegmentStats> stats(labels.region_count());
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        SegmentStats& s = stats[labels.labels[i]];
        const Rgb p = img.pixels[i];
        const uint64_t c[3] = {p.r, p.g, p.b};
        ++s.area;
        for (int ch = 0; ch < 3; ++ch) {
            s.sum[ch] += c[ch];
            s.sumsq[ch] += c[ch] * c[ch];
        }
    }
    return stats;
}

} // namespace

double q_metric(const Raster& img, const LabelMap& labels) {
    const std::vector<SegmentStats> stats = collect(img, labels);
    std::map<uint64_t, uint32_t> area_counts; // R(S_i)
    uint32_t regions = 0;
    for (const SegmentStats& s : stats) {
        if (s.area > 0) {
            ++regions;
            ++area_counts[s.area];
        }
    }
    double sum = 0.0;
    for (const SegmentStats& s : stats) {
        if (s.area == 0)
            continue;
        const double area = static_cast<double>(s.area);
        double err2 = 0.0; // summed squared deviation from the mean, all channels
        for (int ch = 0; ch < 3; ++ch) {
            const double mean = static_cast<double>(s.sum[ch]) / area;
            err2 += static_cast<double>(s.sumsq[ch]) - mean * static_cast<double>(s.sum[ch]);
        }
        if (err2 < 0.0)
            err2 = 0.0; // rounding guard; exact integer sums keep flat segments at 0
        const double same_area = area_counts.at(s.area);
        sum += err2 / (1.0 + std::log10(area)) + (same_area / area) * (same_area / area);
    }
    const double nm = static_cast<double>(img.pixel_count());
    return std::sqrt(static_cast<double>(regions)) / (1000.0 * nm) * sum;
}

double h_r(const Raster& img, const LabelMap& labels, int bins) {
    if (labels.width != img.width || labels.height != img.height)
        throw std::invalid_argument("label map does not match the raster");
    if (bins < 1)
        throw std::invalid_argument("bin count must be positive");
    const uint32_t regions = labels.region_count();
    std::vector<std::vector<uint64_t>> hist(regions, std::vector<uint64_t>(static_cast<size_t>(bins), 0));
    std::vector<uint64_t> area(regions, 0);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        const uint32_t id = labels.labels[i];
        const int lum = luminance(img.pixels[i]);
        ++hist[id][static_cast<size_t>(lum * bins / 256)];
        ++area[id];
    }
    const double total = static_cast<double>(img.pixel_count());
    double out = 0.0;
    for (uint32_t id = 0; id < regions; ++id) {
        if (area[id] == 0)
            continue;
        double h = 0.0;
        for (uint64_t c : hist[id]) {
            if (c > 0) {
                const double p = static_cast<double>(c) / static_cast<double>(area[id]);
                h -= p * std::log(p);
            }
        }
        out += static_cast<double>(area[id]) / total * h;
    }
    return out < 0.0 ? 0.0 : out;
}

double h_l(const LabelMap& labels) {
    if (labels.labels.empty())
        throw std::invalid_argument("label map is empty");
    std::vector<uint64_t> area(labels.region_count(), 0);
    for (uint32_t v : labels.labels)
        ++area[v];
    const double total = static_cast<double>(labels.labels.size());
    double h = 0.0;
    for (uint64_t a : area) {
        if (a > 0) {
            const double p = static_cast<double>(a) / total;
            h -= p * std::log(p);
        }
    }
    return h < 0.0 ? 0.0 : h;
}

double e_metric(const Raster& img, const LabelMap& labels, int bins) {
    return h_r(img, labels, bins) + h_l(labels);
}

EvalReport evaluate(const Raster& img, const LabelMap& labels, int bins) {
    EvalReport report;
    report.q = q_metric(img, labels);
    report.h_r = h_r(img, labels, bins);
    report.h_l = h_l(labels);
    report.e = report.h_r + report.h_l;
    report.regions = labels.region_count();
    return report;
}

} // namespace hseg
