#include "hseg/leafseg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hseg {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Window luminance as doubles, row-major within the window.
std::vector<double> window_luminance(const Raster& img, const Window& win) {
    std::vector<double> out(static_cast<size_t>(win.w) * win.h);
    size_t i = 0;
    for (int y = win.y0; y < win.y0 + win.h; ++y)
        for (int x = win.x0; x < win.x0 + win.w; ++x)
            out[i++] = static_cast<double>(luminance(img.at(x, y)));
    return out;
}

void gaussian_blur(std::vector<double>& plane, int w, int h, double sigma) {
    if (sigma <= 0.0)
        return;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(static_cast<size_t>(radius) * 2 + 1);
    double norm = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        norm += kernel[i + radius];
    }
    for (double& k : kernel)
        k /= norm;

    std::vector<double> tmp(plane.size());
    // horizontal pass, replicated borders
    for (int y = 0; y < h; ++y) {
        const double* row = plane.data() + static_cast<size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * row[clampi(x + i, 0, w - 1)];
            tmp[static_cast<size_t>(y) * w + x] = acc;
        }
    }
    // vertical pass
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp[static_cast<size_t>(clampi(y + i, 0, h - 1)) * w + x];
            plane[static_cast<size_t>(y) * w + x] = acc;
        }
    }
}

} // namespace

std::vector<uint8_t> detect_edges(const Raster& img, const Window& win, const EdgeParams& params) {
    if (!window_fits(img, win))
        throw std::invalid_argument("window out of raster bounds");
    const int w = win.w, h = win.h;
    const size_t n = static_cast<size_t>(w) * h;
    std::vector<uint8_t> mask(n, 0);
    if (w < 2 && h < 2)
        return mask;

    std::vector<double> plane = window_luminance(img, win);
    gaussian_blur(plane, w, h, params.sigma);

    auto at = [&](int x, int y) { return plane[static_cast<size_t>(clampi(y, 0, h - 1)) * w + clampi(x, 0, w - 1)]; };

    std::vector<double> mag(n, 0.0);
    std::vector<uint8_t> dir(n, 0); // 0:0deg 1:45 2:90 3:135, gradient direction
    double max_mag = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)) -
                              (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            const double gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)) -
                              (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
            const double m = std::hypot(gx, gy);
            const size_t i = static_cast<size_t>(y) * w + x;
            mag[i] = m;
            max_mag = std::max(max_mag, m);
            double ang = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
            if (ang < 0.0)
                ang += 180.0;
            if (ang < 22.5 || ang >= 157.5)
                dir[i] = 0;
            else if (ang < 67.5)
                dir[i] = 1;
            else if (ang < 112.5)
                dir[i] = 2;
            else
                dir[i] = 3;
        }
    }
    if (max_mag <= 0.0)
        return mask; // flat window

    // Non-maximum suppression along the gradient; plateau pixels survive.
    static const int off[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    std::vector<uint8_t> keep(n, 0);
    auto mag_at = [&](int x, int y) -> double {
        if (x < 0 || x >= w || y < 0 || y >= h)
            return 0.0;
        return mag[static_cast<size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            if (mag[i] <= 0.0)
                continue;
            const int dx = off[dir[i]][0], dy = off[dir[i]][1];
            if (mag[i] >= mag_at(x + dx, y + dy) && mag[i] >= mag_at(x - dx, y - dy))
                keep[i] = 1;
        }
    }

    // Double-threshold hysteresis, 8-connected linking.
    const double high = params.high * max_mag;
    const double low = params.low * max_mag;
    std::vector<size_t> stack;
    for (size_t i = 0; i < n; ++i) {
        if (keep[i] && mag[i] >= high) {
            mask[i] = 1;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const size_t i = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                    continue;
                const size_t j = static_cast<size_t>(ny) * w + nx;
                if (!mask[j] && keep[j] && mag[j] >= low) {
                    mask[j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    return mask;
}

LeafRegions extract_regions(const Raster& img, const Window& win, const std::vector<uint8_t>& edges) {
    if (!window_fits(img, win))
        throw std::invalid_argument("window out of raster bounds");
    const int w = win.w, h = win.h;
    const size_t n = static_cast<size_t>(w) * h;
    if (edges.size() != n)
        throw std::invalid_argument("edge mask does not match the window");

    constexpr uint32_t kUnassigned = std::numeric_limits<uint32_t>::max();
    LeafRegions out;
    out.width = w;
    out.height = h;
    out.labels.assign(n, kUnassigned);

    auto color = [&](size_t i) {
        return img.at(win.x0 + static_cast<int>(i % w), win.y0 + static_cast<int>(i / w));
    };

    // Flood fill the non-edge pixels into core regions (4-connected).
    std::vector<size_t> stack;
    for (size_t seed = 0; seed < n; ++seed) {
        if (edges[seed] || out.labels[seed] != kUnassigned)
            continue;
        const uint32_t id = static_cast<uint32_t>(out.descriptors.size());
        out.descriptors.push_back({});
        out.labels[seed] = id;
        stack.push_back(seed);
        while (!stack.empty()) {
            const size_t i = stack.back();
            stack.pop_back();
            out.descriptors[id].add(color(i));
            const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
            const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (auto [nx, ny] : nb) {
                if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                    continue;
                const size_t j = static_cast<size_t>(ny) * w + nx;
                if (!edges[j] && out.labels[j] == kUnassigned) {
                    out.labels[j] = id;
                    stack.push_back(j);
                }
            }
        }
    }

    if (out.descriptors.empty()) {
        // Every pixel was marked as edge; the window is one region.
        out.descriptors.push_back({});
        for (size_t i = 0; i < n; ++i) {
            out.labels[i] = 0;
            out.descriptors[0].add(color(i));
        }
    }

    // Absorb edge pixels into the 4-adjacent region with the closest core
    // mean color (ties to the lowest region id). Passes use the labels as
    // they stood at the start of the pass, so fronts grow evenly.
    struct Mean {
        double r, g, b;
    };
    std::vector<Mean> core_mean;
    core_mean.reserve(out.descriptors.size());
    for (const FeatureDescriptor& fd : out.descriptors)
        core_mean.push_back({fd.mean_r(), fd.mean_g(), fd.mean_b()});

    std::vector<size_t> pending;
    for (size_t i = 0; i < n; ++i)
        if (out.labels[i] == kUnassigned)
            pending.push_back(i);

    std::vector<std::pair<size_t, uint32_t>> assign;
    while (!pending.empty()) {
        assign.clear();
        std::vector<size_t> still;
        for (size_t i : pending) {
            const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
            const Rgb c = color(i);
            uint32_t best = kUnassigned;
            double best_d = 0.0;
            const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (auto [nx, ny] : nb) {
                if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                    continue;
                const uint32_t id = out.labels[static_cast<size_t>(ny) * w + nx];
                if (id == kUnassigned)
                    continue;
                const Mean& m = core_mean[id];
                const double dr = c.r - m.r, dg = c.g - m.g, db = c.b - m.b;
                const double d = dr * dr + dg * dg + db * db;
                if (best == kUnassigned || d < best_d || (d == best_d && id < best)) {
                    best = id;
                    best_d = d;
                }
            }
            if (best != kUnassigned)
                assign.emplace_back(i, best);
            else
                still.push_back(i);
        }
        for (auto [i, id] : assign)
            out.labels[i] = id;
        pending = std::move(still);
    }

    // Rebuild descriptors over the full pixel sets.
    for (FeatureDescriptor& fd : out.descriptors)
        fd = {};
    for (size_t i = 0; i < n; ++i)
        out.descriptors[out.labels[i]].add(color(i));

    // Region-to-region boundary lengths.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const uint32_t a = out.labels[static_cast<size_t>(y) * w + x];
            if (x + 1 < w) {
                const uint32_t b = out.labels[static_cast<size_t>(y) * w + x + 1];
                if (a != b)
                    ++out.adjacency[{std::min(a, b), std::max(a, b)}];
            }
            if (y + 1 < h) {
                const uint32_t b = out.labels[static_cast<size_t>(y + 1) * w + x];
                if (a != b)
                    ++out.adjacency[{std::min(a, b), std::max(a, b)}];
            }
        }
    }

    // Contact length with the window borders.
    for (int y = 0; y < h; ++y) {
        ++out.border[static_cast<size_t>(BorderSide::Left)][out.labels[static_cast<size_t>(y) * w]];
        ++out.border[static_cast<size_t>(BorderSide::Right)][out.labels[static_cast<size_t>(y) * w + w - 1]];
    }
    for (int x = 0; x < w; ++x) {
        ++out.border[static_cast<size_t>(BorderSide::Top)][out.labels[static_cast<size_t>(x)]];
        ++out.border[static_cast<size_t>(BorderSide::Bottom)][out.labels[static_cast<size_t>(h - 1) * w + x]];
    }
    return out;
}

} // namespace hseg
