#pragma once

#include "depthlang/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace depthlang {

/// One manifest row. Paths are stored as written in the manifest file and
/// resolved against the manifest's directory.
struct ManifestEntry {
    std::string id;
    std::string scene;
    std::string depth;
    std::string segmentation;
    std::optional<std::string> rgb;
    std::optional<std::string> captions;
};

struct DatasetManifest {
    std::string dataset;
    std::string split_tag;               // empty when unset
    std::filesystem::path base_dir;      // resolution root for entry paths
    std::vector<ManifestEntry> entries;

    std::filesystem::path resolve(const std::string& path) const;
};

/// Parses and validates a manifest JSON file:
///   {"dataset": str, "split"?: str,
///    "entries": [{"id", "scene", "depth", "segmentation", "rgb"?, "captions"?}]}
/// Duplicate ids or missing referenced files raise ValidationError.
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// FNV-1a 64 of a file's raw bytes, as 16 hex digits.
std::string hash_file(const std::filesystem::path& path);

/// Ground-truth depth validity policy: pixels outside (0, max_depth] are
/// invalid. Predicted maps are handled separately (clamped, not invalidated).
struct LoadOptions {
    double max_depth = 10.0;
};

/// Reads a depth file by extension: ".dgrd" raw grid or ".png" 16-bit
/// millimeter grayscale. Validity reflects only the file's own sentinels
/// (zero pixels / NaN); no range policy is applied.
DepthGrid read_depth_file(const std::filesystem::path& path);
void write_depth_file(const std::filesystem::path& path, const DepthGrid& grid);

/// Raw depth grid format: magic "DGRD", u32-le width, u32-le height, then
/// width*height f32-le meters in row-major order. NaN marks invalid pixels.
DepthGrid read_depth_dgrd(const std::filesystem::path& path);
void write_depth_dgrd(const std::filesystem::path& path, const DepthGrid& grid);

/// 16-bit grayscale PNG, value = millimeters, 0 = invalid.
DepthGrid read_depth_png(const std::filesystem::path& path);
void write_depth_png(const std::filesystem::path& path, const DepthGrid& grid);

/// Segmentation = 16-bit id PNG plus a JSON sidecar (same path with a .json
/// extension): {"scene": str, "instances": [{"id": int, "class": str}]}.
SegmentationMap read_segmentation(const std::filesystem::path& png_path,
                                  std::string* sidecar_scene = nullptr);
void write_segmentation(const std::filesystem::path& png_path, const SegmentationMap& seg,
                        const std::string& scene);

std::vector<std::string> read_captions(const std::filesystem::path& path);
void write_captions(const std::filesystem::path& path, const std::vector<std::string>& captions);

/// Loads and validates one sample. Depth and segmentation must agree on
/// dimensions; every nonzero instance id must be named by the sidecar; the
/// manifest scene label must not contradict the sidecar's.
Sample load_sample(const DatasetManifest& manifest, const ManifestEntry& entry,
                   const LoadOptions& options = {});

/// Writes a sample back through the canonical writers, using the entry's
/// paths resolved against out_dir. Inverse of load_sample for conforming
/// files.
void write_sample(const Sample& sample, const ManifestEntry& entry,
                  const std::filesystem::path& out_dir);

struct PartitionResult {
    DatasetManifest train;
    DatasetManifest test;
    std::size_t dropped = 0;  // entries whose scene is in neither set
};

/// Splits by scene label. The two scene sets must be disjoint; entries in
/// neither set are dropped and counted.
PartitionResult partition_by_scene(const DatasetManifest& manifest,
                                   const std::set<std::string>& train_scenes,
                                   const std::set<std::string>& test_scenes);

/// Keeps exactly the samples admitting at least one depth, one vertical and
/// one horizontal relation under the given overlap factor and uniqueness
/// policy.
DatasetManifest select_relation_complete_subset(const DatasetManifest& manifest, double lambda,
                                                bool unique_only,
                                                const LoadOptions& options = {});

}  // namespace depthlang
