#pragma once

#include "depthlang/grid.hpp"
#include "depthlang/rng.hpp"

#include <filesystem>
#include <string>

namespace depthlang::testing {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// Sample with an all-valid constant-depth background and no objects.
Sample blank_sample(int width, int height, const std::string& id = "img",
                    const std::string& scene = "kitchen", float background_depth = 1.0f);

/// Paints an inclusive rectangle with one instance id and a constant depth.
void paint_rect(Sample& sample, std::uint16_t id, const std::string& class_name, int row0,
                int col0, int row1, int col1, float depth);

/// Randomized sample: n_objects rectangles with random geometry, per-object
/// random depth (small per-pixel jitter), a few invalid background pixels.
/// Later rectangles may overwrite earlier ones; ids that lose every pixel
/// disappear, as in real annotations. Class names repeat with period 7 so
/// some samples contain duplicate classes.
Sample random_sample(SplitMix64& rng, int n_objects, int width, int height);

/// Random depth grid with values in [min_value, max_value) and roughly
/// invalid_fraction invalid pixels.
DepthGrid random_grid(SplitMix64& rng, int width, int height, float min_value, float max_value,
                      double invalid_fraction);

std::string read_bytes(const std::filesystem::path& path);

}  // namespace depthlang::testing
