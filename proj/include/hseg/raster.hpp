#pragma once

#include <cstdint>
#include <vector>

namespace hseg {

struct Rgb {
    uint8_t r = 0;
    uint8_t g = 0;
    uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Immutable-after-load RGB image, row-major, 8 bits per channel.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    Raster() = default;
    Raster(int w, int h, Rgb fill = {});

    const Rgb& at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    bool empty() const { return width <= 0 || height <= 0; }
    long long pixel_count() const { return static_cast<long long>(width) * height; }
};

/// Rectangular zero-copy view into a Raster.
struct Window {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;

    int longer_side() const { return w > h ? w : h; }
    int shorter_side() const { return w < h ? w : h; }
    long long area() const { return static_cast<long long>(w) * h; }

    friend bool operator==(const Window&, const Window&) = default;
};

bool window_fits(const Raster& img, const Window& win);

/// Per-pixel segment ids, row-major. Ids are expected to form a
/// contiguous range 0..R-1 once a segmentation is finalized.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<uint32_t> labels;

    LabelMap() = default;
    LabelMap(int w, int h, uint32_t fill = 0);

    uint32_t at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
    uint32_t& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }
    uint32_t region_count() const;
};

/// Rec.601 luma, rounded to the nearest integer in [0,255].
int luminance(Rgb p);

/// Luminance of every pixel, same layout as Raster::pixels.
std::vector<uint8_t> luminance_plane(const Raster& img);

} // namespace hseg
