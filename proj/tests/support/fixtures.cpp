#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace depthlang::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    std::ostringstream name;
    name << "depthlang_test_" << ::getpid() << "_" << counter.fetch_add(1);
    path_ = fs::temp_directory_path() / name.str();
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

Sample blank_sample(int width, int height, const std::string& id, const std::string& scene,
                    float background_depth) {
    Sample sample;
    sample.image_id = id;
    sample.scene_label = scene;
    sample.depth_gt = DepthGrid(width, height, background_depth, true);
    sample.segmentation = SegmentationMap(width, height);
    return sample;
}

void paint_rect(Sample& sample, std::uint16_t id, const std::string& class_name, int row0,
                int col0, int row1, int col1, float depth) {
    for (int r = row0; r <= row1; ++r) {
        for (int c = col0; c <= col1; ++c) {
            sample.segmentation.set(r, c, id);
            sample.depth_gt.set(r, c, depth);
        }
    }
    sample.segmentation.class_of[id] = class_name;
}

Sample random_sample(SplitMix64& rng, int n_objects, int width, int height) {
    Sample sample = blank_sample(width, height, "synthetic", "kitchen");
    for (std::size_t i = 0; i < sample.depth_gt.size(); ++i) {
        sample.depth_gt.values[i] = 0.5f + 9.0f * static_cast<float>(rng.below(1000)) / 1000.0f;
        if (rng.below(20) == 0) sample.depth_gt.valid[i] = 0;
    }
    for (int id = 1; id <= n_objects; ++id) {
        int h = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(height / 2)));
        int w = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(width / 2)));
        int r0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(height - h + 1)));
        int c0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(width - w + 1)));
        float base = 0.5f + 8.0f * static_cast<float>(rng.below(1000)) / 1000.0f;
        for (int r = r0; r < r0 + h; ++r) {
            for (int c = c0; c < c0 + w; ++c) {
                sample.segmentation.set(r, c, static_cast<std::uint16_t>(id));
                float jitter = 0.05f * static_cast<float>(rng.below(10));
                bool ok = rng.below(30) != 0;
                sample.depth_gt.set(r, c, base + jitter, ok);
            }
        }
        sample.segmentation.class_of[static_cast<std::uint16_t>(id)] =
            "class" + std::to_string(id % 7);
    }
    // Drop table entries for ids fully overwritten by later rectangles.
    std::map<std::uint16_t, std::string> surviving;
    for (std::uint16_t id : sample.segmentation.ids) {
        if (id == 0) continue;
        auto it = sample.segmentation.class_of.find(id);
        if (it != sample.segmentation.class_of.end()) surviving.insert(*it);
    }
    sample.segmentation.class_of = std::move(surviving);
    return sample;
}

DepthGrid random_grid(SplitMix64& rng, int width, int height, float min_value, float max_value,
                      double invalid_fraction) {
    DepthGrid grid(width, height);
    const auto cut = static_cast<std::uint64_t>(invalid_fraction * 1000.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        float t = static_cast<float>(rng.below(100000)) / 100000.0f;
        grid.values[i] = min_value + (max_value - min_value) * t;
        grid.valid[i] = rng.below(1000) < cut ? 0 : 1;
    }
    return grid;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace depthlang::testing
