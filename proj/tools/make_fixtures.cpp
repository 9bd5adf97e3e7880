// Writes the committed toy dataset (data/toy): five 8x8 samples with depth,
// segmentation, rgb, captions, a manifest, and two prediction sets for the
// eval/compare pipeline. Rerunning reproduces the same bytes.
#include "depthlang/dataset.hpp"
#include "depthlang/png_io.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace depthlang;

namespace {

struct ObjectSpec {
    std::uint16_t id;
    std::string class_name;
    int row0, col0;  // 2x2 block anchor
    float depth;
};

struct SampleSpec {
    std::string id;
    std::string scene;
    std::vector<ObjectSpec> objects;
    std::vector<std::string> captions;
};

Sample build(const SampleSpec& spec) {
    constexpr int kSize = 8;
    Sample sample;
    sample.image_id = spec.id;
    sample.scene_label = spec.scene;
    sample.depth_gt = DepthGrid(kSize, kSize);
    sample.segmentation = SegmentationMap(kSize, kSize);
    sample.rgb = RgbImage(kSize, kSize);
    sample.captions = spec.captions;

    for (int row = 0; row < kSize; ++row) {
        for (int col = 0; col < kSize; ++col) {
            sample.depth_gt.set(row, col, 1.0f + 0.1f * row + 0.05f * col);
            auto* px = &sample.rgb->pixels[sample.rgb->index(row, col)];
            px[0] = static_cast<std::uint8_t>(20 + 10 * row);
            px[1] = static_cast<std::uint8_t>(20 + 10 * col);
            px[2] = 40;
        }
    }
    // Two holes in the background exercise the validity policy.
    sample.depth_gt.set(3, 3, 0.0f, false);
    sample.depth_gt.set(4, 4, 0.0f, false);

    for (const auto& object : spec.objects) {
        sample.segmentation.class_of[object.id] = object.class_name;
        for (int dr = 0; dr < 2; ++dr) {
            for (int dc = 0; dc < 2; ++dc) {
                const int row = object.row0 + dr, col = object.col0 + dc;
                sample.segmentation.set(row, col, object.id);
                sample.depth_gt.set(row, col, object.depth);
                auto* px = &sample.rgb->pixels[sample.rgb->index(row, col)];
                px[0] = static_cast<std::uint8_t>(40 * object.id);
                px[1] = static_cast<std::uint8_t>(255 - 30 * object.id);
                px[2] = 120;
            }
        }
    }
    return sample;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <output-dir>\n";
        return 2;
    }
    const fs::path out_dir(argv[1]);

    // Four 2x2 objects near the corners: every diagonal pair is separated on
    // all three axes, so each sample is relation-complete. "plant" is unique
    // in every sample and carries depth relations, making it the masking
    // target. Sample 3 duplicates "chair" to exercise unique-class filtering.
    const std::vector<SampleSpec> specs = {
        {"toy_0001", "kitchen",
         {{1, "knife", 0, 0, 1.5f}, {2, "refrigerator", 0, 5, 3.0f},
          {3, "table", 5, 0, 2.0f}, {4, "plant", 5, 5, 4.0f}},
         {"A knife is in front of a refrigerator.", "A small kitchen with a table and a plant."}},
        {"toy_0002", "bedroom",
         {{1, "tv", 0, 0, 2.0f}, {2, "bed", 0, 5, 4.0f},
          {3, "lamp", 5, 0, 5.0f}, {4, "plant", 5, 5, 3.0f}},
         {"A tv stands in front of a bed."}},
        {"toy_0003", "living room",
         {{1, "sofa", 0, 0, 2.0f}, {2, "chair", 0, 5, 3.0f},
          {3, "chair", 5, 0, 3.5f}, {4, "plant", 5, 5, 6.0f}},
         {"Two chairs and a sofa in a living room."}},
        {"toy_0004", "bathroom",
         {{1, "toilet", 0, 0, 1.8f}, {2, "sink", 0, 5, 2.6f},
          {3, "mirror", 5, 0, 3.4f}, {4, "plant", 5, 5, 5.0f}},
         {"A bathroom with a mirror above a sink."}},
        {"toy_0005", "office",
         {{1, "desk", 0, 0, 2.2f}, {2, "monitor", 0, 5, 3.2f},
          {3, "keyboard", 5, 0, 1.6f}, {4, "plant", 5, 5, 4.2f}},
         {"A desk with a monitor and a keyboard."}},
    };

    DatasetManifest manifest;
    manifest.dataset = "toy";
    manifest.base_dir = out_dir;

    for (const auto& spec : specs) {
        ManifestEntry entry;
        entry.id = spec.id;
        entry.scene = spec.scene;
        entry.depth = "depth/" + spec.id + ".png";
        entry.segmentation = "seg/" + spec.id + ".png";
        entry.rgb = "rgb/" + spec.id + ".png";
        entry.captions = "captions/" + spec.id + ".json";
        manifest.entries.push_back(entry);

        const Sample sample = build(spec);
        write_sample(sample, entry, out_dir);

        // preds_a: the ground truth itself (identity metrics).
        // preds_b: everything 10% deeper, holes preserved.
        fs::create_directories(out_dir / "preds_a");
        fs::create_directories(out_dir / "preds_b");
        write_depth_png(out_dir / "preds_a" / (spec.id + ".png"), sample.depth_gt);
        DepthGrid scaled = sample.depth_gt;
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            if (scaled.valid[i]) scaled.values[i] *= 1.1f;
        }
        write_depth_png(out_dir / "preds_b" / (spec.id + ".png"), scaled);
    }

    save_manifest(manifest, out_dir / "manifest.json");
    std::cout << "wrote " << specs.size() << " samples under " << out_dir.string() << "\n";
    return 0;
}
