#pragma once

#include "depthlang/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace depthlang {

/// PNG codecs for the two on-disk raster formats: 16-bit grayscale (depth in
/// millimeters, segmentation instance ids) and 8-bit RGB.
///
/// Writers are canonical: fixed zlib level, no filtering, no ancillary
/// chunks. Re-encoding a grid that was read from a canonically written file
/// reproduces it byte for byte.

struct Gray16Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> pixels;  // row-major
};

Gray16Image read_png_gray16(const std::filesystem::path& path);
void write_png_gray16(const std::filesystem::path& path, const Gray16Image& image);

/// Reads 8-bit PNG as RGB. Grayscale is expanded and an alpha channel is
/// stripped; 16-bit color depth is rejected.
RgbImage read_png_rgb8(const std::filesystem::path& path);
void write_png_rgb8(const std::filesystem::path& path, const RgbImage& image);

}  // namespace depthlang
