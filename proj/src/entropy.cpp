#include "hseg/entropy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace hseg {

double entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0)
            h -= p * std::log(p);
    }
    return h < 0.0 ? 0.0 : h;
}

double histogram_entropy(const Histogram& hist) {
    if (hist.total == 0)
        throw std::invalid_argument("histogram is empty");
    double h = 0.0;
    const double total = static_cast<double>(hist.total);
    for (uint64_t c : hist.counts) {
        if (c > 0) {
            double p = static_cast<double>(c) / total;
            h -= p * std::log(p);
        }
    }
    return h < 0.0 ? 0.0 : h;
}

double segment_entropy(const LabelMap& labels) {
    if (labels.labels.empty())
        throw std::invalid_argument("label map is empty");
    std::map<uint32_t, uint64_t> areas;
    for (uint32_t v : labels.labels)
        ++areas[v];
    const double total = static_cast<double>(labels.labels.size());
    double h = 0.0;
    for (const auto& [id, area] : areas) {
        double p = static_cast<double>(area) / total;
        h -= p * std::log(p);
    }
    return h < 0.0 ? 0.0 : h;
}

static void validate(const NoiseModel& model) {
    if (model.dominant_count < 1 || model.noise_count < 1)
        throw std::invalid_argument("segment counts must be at least 1");
    if (!(model.dominant_area > 0.0 && model.dominant_area <= 1.0))
        throw std::invalid_argument("dominant area fraction must be in (0,1]");
}

double noise_bound(const NoiseModel& model) {
    validate(model);
    const double a = model.dominant_area;
    const double k = model.dominant_count;
    if (a == 1.0)
        return std::log(k); // noise-free limit, exact
    return -a * std::log(a / k) - (1.0 - a) * std::log((1.0 - a) / model.noise_count);
}

double noise_redundancy(const NoiseModel& model) {
    double eps = noise_bound(model) - std::log(static_cast<double>(model.dominant_count));
    return eps < 0.0 ? 0.0 : eps;
}

bool stopping_holds(const Histogram& hist, const NoiseModel& model) {
    return histogram_entropy(hist) <= noise_bound(model);
}

Histogram luminance_histogram(const Raster& img, const Window& win, int bins) {
    if (bins < 1)
        throw std::invalid_argument("bin count must be positive");
    if (!window_fits(img, win))
        throw std::invalid_argument("window out of raster bounds");
    Histogram hist(static_cast<size_t>(bins));
    for (int y = win.y0; y < win.y0 + win.h; ++y) {
        for (int x = win.x0; x < win.x0 + win.w; ++x) {
            int lum = luminance(img.at(x, y));
            hist.add(static_cast<size_t>(lum * bins / 256));
        }
    }
    return hist;
}

Histogram luminance_histogram(const std::vector<uint8_t>& plane, int stride, const Window& win, int bins) {
    Histogram hist(static_cast<size_t>(bins));
    for (int y = win.y0; y < win.y0 + win.h; ++y) {
        const uint8_t* row = plane.data() + static_cast<size_t>(y) * stride;
        for (int x = win.x0; x < win.x0 + win.w; ++x)
            hist.add(static_cast<size_t>(row[x] * bins / 256));
    }
    return hist;
}

} // namespace hseg
