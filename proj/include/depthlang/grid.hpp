#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace depthlang {

/// Dense per-pixel depth in meters with an explicit validity mask.
/// Row-major storage; (row, col) indexing throughout the toolkit.
/// Invalid pixels keep whatever raw value the file carried (0, NaN, or an
/// out-of-range reading) and are excluded from every statistic and metric.
struct DepthGrid {
    int width = 0;
    int height = 0;
    std::vector<float> values;     // height*width, meters
    std::vector<std::uint8_t> valid;  // height*width, 0/1

    DepthGrid() = default;
    DepthGrid(int w, int h, float fill = 0.0f, bool fill_valid = false)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * h, fill),
          valid(static_cast<std::size_t>(w) * h, fill_valid ? 1 : 0) {}

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    float at(int row, int col) const { return values[index(row, col)]; }
    bool is_valid(int row, int col) const { return valid[index(row, col)] != 0; }
    std::size_t size() const { return values.size(); }

    void set(int row, int col, float v, bool ok = true) {
        values[index(row, col)] = v;
        valid[index(row, col)] = ok ? 1 : 0;
    }
};

/// Instance segmentation: 16-bit instance ids (0 = unlabeled) plus the
/// id -> class-name table from the JSON sidecar.
struct SegmentationMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> ids;               // height*width
    std::map<std::uint16_t, std::string> class_of;  // nonzero ids only

    SegmentationMap() = default;
    SegmentationMap(int w, int h)
        : width(w), height(h), ids(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    std::uint16_t id_at(int row, int col) const { return ids[index(row, col)]; }
    void set(int row, int col, std::uint16_t id) { ids[index(row, col)] = id; }
};

/// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // height*width*3

    RgbImage() = default;
    RgbImage(int w, int h)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::size_t index(int row, int col) const {
        return (static_cast<std::size_t>(row) * width + col) * 3;
    }
};

/// One dataset item. rgb and captions are optional; depth and segmentation
/// always share the same dimensions (checked on load).
struct Sample {
    std::string image_id;
    std::string scene_label;
    std::optional<RgbImage> rgb;
    DepthGrid depth_gt;
    SegmentationMap segmentation;
    std::vector<std::string> captions;
};

}  // namespace depthlang
