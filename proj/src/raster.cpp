#include "hseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hseg {

Raster::Raster(int w, int h, Rgb fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw std::invalid_argument("raster dimensions must be at least 1x1");
    pixels.assign(static_cast<size_t>(w) * h, fill);
}

LabelMap::LabelMap(int w, int h, uint32_t fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw std::invalid_argument("label map dimensions must be at least 1x1");
    labels.assign(static_cast<size_t>(w) * h, fill);
}

uint32_t LabelMap::region_count() const {
    uint32_t top = 0;
    for (uint32_t v : labels)
        top = std::max(top, v);
    return labels.empty() ? 0 : top + 1;
}

bool window_fits(const Raster& img, const Window& win) {
    return win.w >= 1 && win.h >= 1 && win.x0 >= 0 && win.y0 >= 0 &&
           win.x0 + win.w <= img.width && win.y0 + win.h <= img.height;
}

int luminance(Rgb p) {
    double y = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    long v = std::lround(y);
    return static_cast<int>(std::clamp(v, 0L, 255L));
}

std::vector<uint8_t> luminance_plane(const Raster& img) {
    std::vector<uint8_t> plane(img.pixels.size());
    for (size_t i = 0; i < img.pixels.size(); ++i)
        plane[i] = static_cast<uint8_t>(luminance(img.pixels[i]));
    return plane;
}

} // namespace hseg
