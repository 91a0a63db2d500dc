#pragma once

#include <string>
#include <vector>

#include "hseg/raster.hpp"

namespace hseg {

// Binary PPM (P6, 8-bit) is always available. PNG is compiled in when the
// library is built with HSEG_HAVE_PNG.

Raster load_image(const std::string& path);              // dispatch on file magic
void save_image(const Raster& img, const std::string& path); // dispatch on extension

Raster load_ppm(const std::string& path);
void save_ppm(const Raster& img, const std::string& path);

bool png_supported();
Raster load_png(const std::string& path);
void save_png(const Raster& img, const std::string& path);

/// 8-bit binary PGM (P5), one byte per pixel, row-major.
void save_pgm(const std::vector<uint8_t>& gray, int width, int height, const std::string& path);

// Label maps are stored as 16-bit PGM when every id fits in 16 bits,
// otherwise as a plain text grid ("HSEGL1" magic). load_label_map accepts
// both, plus 8-bit PGM.
void save_label_map(const LabelMap& labels, const std::string& path);
LabelMap load_label_map(const std::string& path);

} // namespace hseg
