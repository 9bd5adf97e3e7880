#include "depthlang/dataset.hpp"

#include "depthlang/error.hpp"
#include "depthlang/png_io.hpp"
#include "depthlang/relations.hpp"
#include "depthlang/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace depthlang {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_bytes(const fs::path& path, const std::string& bytes) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("short write to '" + path.string() + "'");
}

ordered_json parse_json_file(const fs::path& path) {
    const std::string bytes = read_file_bytes(path);
    try {
        return ordered_json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        // e.what() names the byte offset of the failure
        throw FormatError("'" + path.string() + "': " + e.what());
    }
}

void dump_json_file(const ordered_json& j, const fs::path& path) {
    write_file_bytes(path, j.dump(2) + "\n");
}

fs::path sidecar_path(const fs::path& png_path) {
    fs::path p = png_path;
    p.replace_extension(".json");
    return p;
}

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

constexpr std::uint32_t kMaxGridPixels = 1u << 28;  // 256M pixels

}  // namespace

fs::path DatasetManifest::resolve(const std::string& path) const {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

DatasetManifest load_manifest(const fs::path& path) {
    const ordered_json j = parse_json_file(path);
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw FormatError("'" + path.string() + "': manifest must be an object with an 'entries' array");
    }

    DatasetManifest m;
    m.dataset = j.value("dataset", std::string{});
    m.split_tag = j.value("split", std::string{});
    m.base_dir = path.parent_path();

    std::set<std::string> seen;
    for (std::size_t i = 0; i < j["entries"].size(); ++i) {
        const auto& je = j["entries"][i];
        ManifestEntry e;
        try {
            e.id = je.at("id").get<std::string>();
            e.scene = je.at("scene").get<std::string>();
            e.depth = je.at("depth").get<std::string>();
            e.segmentation = je.at("segmentation").get<std::string>();
        } catch (const nlohmann::json::exception& ex) {
            throw FormatError("'" + path.string() + "': entry " + std::to_string(i) + ": " + ex.what());
        }
        if (je.contains("rgb")) e.rgb = je["rgb"].get<std::string>();
        if (je.contains("captions")) e.captions = je["captions"].get<std::string>();

        if (!seen.insert(e.id).second) {
            throw ValidationError("'" + path.string() + "': duplicate image_id '" + e.id + "'");
        }
        for (const std::string* p : {&e.depth, &e.segmentation}) {
            if (!fs::exists(m.resolve(*p))) {
                throw ValidationError("'" + path.string() + "': entry '" + e.id +
                                      "' references missing file '" + *p + "'");
            }
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
    const fs::path out_dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();

    auto rewrite = [&](const std::string& stored) -> std::string {
        const fs::path resolved = fs::weakly_canonical(manifest.resolve(stored));
        const fs::path rel = resolved.lexically_relative(fs::weakly_canonical(out_dir));
        return rel.empty() ? resolved.string() : rel.string();
    };

    ordered_json j;
    j["dataset"] = manifest.dataset;
    if (!manifest.split_tag.empty()) j["split"] = manifest.split_tag;
    j["entries"] = ordered_json::array();
    for (const auto& e : manifest.entries) {
        ordered_json je;
        je["id"] = e.id;
        je["scene"] = e.scene;
        je["depth"] = rewrite(e.depth);
        je["segmentation"] = rewrite(e.segmentation);
        if (e.rgb) je["rgb"] = rewrite(*e.rgb);
        if (e.captions) je["captions"] = rewrite(*e.captions);
        j["entries"].push_back(std::move(je));
    }
    dump_json_file(j, path);
}

std::string hash_file(const fs::path& path) {
    const std::string bytes = read_file_bytes(path);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

DepthGrid read_depth_dgrd(const fs::path& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() < 12) {
        throw FormatError("'" + path.string() + "': truncated header (need 12 bytes, have " +
                          std::to_string(bytes.size()) + ")");
    }
    if (std::memcmp(bytes.data(), "DGRD", 4) != 0) {
        throw FormatError("'" + path.string() + "': bad magic at byte 0 (expected \"DGRD\")");
    }
    auto read_u32 = [&](std::size_t off) {
        std::uint32_t v;
        std::memcpy(&v, bytes.data() + off, 4);
        return v;  // little-endian host assumed (x86/arm64); format is LE
    };
    const std::uint32_t w = read_u32(4);
    const std::uint32_t h = read_u32(8);
    if (w == 0 || h == 0 || static_cast<std::uint64_t>(w) * h > kMaxGridPixels) {
        throw FormatError("'" + path.string() + "': implausible dimensions " + std::to_string(w) +
                          "x" + std::to_string(h) + " in header field width/height");
    }
    const std::size_t expect = 12 + static_cast<std::size_t>(w) * h * 4;
    if (bytes.size() != expect) {
        throw FormatError("'" + path.string() + "': payload size mismatch at byte " +
                          std::to_string(bytes.size()) + " (expected " + std::to_string(expect) +
                          " bytes total)");
    }

    DepthGrid grid(static_cast<int>(w), static_cast<int>(h));
    std::memcpy(grid.values.data(), bytes.data() + 12, grid.values.size() * 4);
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        grid.valid[i] = std::isnan(grid.values[i]) ? 0 : 1;
    }
    return grid;
}

void write_depth_dgrd(const fs::path& path, const DepthGrid& grid) {
    std::string bytes;
    bytes.reserve(12 + grid.values.size() * 4);
    bytes.append("DGRD", 4);
    const std::uint32_t w = static_cast<std::uint32_t>(grid.width);
    const std::uint32_t h = static_cast<std::uint32_t>(grid.height);
    bytes.append(reinterpret_cast<const char*>(&w), 4);
    bytes.append(reinterpret_cast<const char*>(&h), 4);

    // Values are written verbatim; invalid pixels are expected to carry NaN
    // (or 0, which the ground-truth validity policy rejects on reload).
    bytes.append(reinterpret_cast<const char*>(grid.values.data()), grid.values.size() * 4);
    write_file_bytes(path, bytes);
}

DepthGrid read_depth_png(const fs::path& path) {
    const Gray16Image img = read_png_gray16(path);
    DepthGrid grid(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        grid.values[i] = static_cast<float>(img.pixels[i] / 1000.0);
        grid.valid[i] = img.pixels[i] != 0 ? 1 : 0;
    }
    return grid;
}

void write_depth_png(const fs::path& path, const DepthGrid& grid) {
    Gray16Image img;
    img.width = grid.width;
    img.height = grid.height;
    img.pixels.resize(grid.values.size());
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const float v = grid.values[i];
        double mm = std::isnan(v) ? 0.0 : std::floor(v * 1000.0 + 0.5);
        mm = std::clamp(mm, 0.0, 65535.0);
        img.pixels[i] = static_cast<std::uint16_t>(mm);
    }
    write_png_gray16(path, img);
}

DepthGrid read_depth_file(const fs::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".dgrd") return read_depth_dgrd(path);
    if (ext == ".png") return read_depth_png(path);
    throw FormatError("'" + path.string() + "': unsupported depth format '" + ext +
                      "' (expected .png or .dgrd)");
}

void write_depth_file(const fs::path& path, const DepthGrid& grid) {
    const std::string ext = lower_extension(path);
    if (ext == ".dgrd") return write_depth_dgrd(path, grid);
    if (ext == ".png") return write_depth_png(path, grid);
    throw FormatError("'" + path.string() + "': unsupported depth format '" + ext +
                      "' (expected .png or .dgrd)");
}

SegmentationMap read_segmentation(const fs::path& png_path, std::string* sidecar_scene) {
    const Gray16Image img = read_png_gray16(png_path);
    SegmentationMap seg(img.width, img.height);
    seg.ids.assign(img.pixels.begin(), img.pixels.end());

    const fs::path side = sidecar_path(png_path);
    if (!fs::exists(side)) {
        throw ValidationError("segmentation sidecar '" + side.string() + "' not found");
    }
    const ordered_json j = parse_json_file(side);
    if (sidecar_scene) *sidecar_scene = j.value("scene", std::string{});
    if (!j.contains("instances") || !j["instances"].is_array()) {
        throw FormatError("'" + side.string() + "': missing 'instances' array");
    }
    for (const auto& ji : j["instances"]) {
        const std::int64_t id = ji.at("id").get<std::int64_t>();
        if (id == 0) {
            throw ValidationError("'" + side.string() + "': instance id 0 is reserved for unlabeled pixels");
        }
        if (id < 0 || id > 65535) {
            throw ValidationError("'" + side.string() + "': instance id " + std::to_string(id) +
                                  " outside the 16-bit range");
        }
        const auto key = static_cast<std::uint16_t>(id);
        if (seg.class_of.count(key)) {
            throw ValidationError("'" + side.string() + "': duplicate instance id " + std::to_string(id));
        }
        seg.class_of[key] = ji.at("class").get<std::string>();
    }

    for (std::uint16_t id : seg.ids) {
        if (id != 0 && !seg.class_of.count(id)) {
            throw ValidationError("'" + png_path.string() + "': instance id " + std::to_string(id) +
                                  " has no class entry in the sidecar");
        }
    }
    return seg;
}

void write_segmentation(const fs::path& png_path, const SegmentationMap& seg,
                        const std::string& scene) {
    Gray16Image img;
    img.width = seg.width;
    img.height = seg.height;
    img.pixels.assign(seg.ids.begin(), seg.ids.end());
    write_png_gray16(png_path, img);

    ordered_json j;
    j["scene"] = scene;
    j["instances"] = ordered_json::array();
    for (const auto& [id, cls] : seg.class_of) {
        j["instances"].push_back({{"id", id}, {"class", cls}});
    }
    dump_json_file(j, sidecar_path(png_path));
}

std::vector<std::string> read_captions(const fs::path& path) {
    const ordered_json j = parse_json_file(path);
    if (!j.is_array()) {
        throw FormatError("'" + path.string() + "': captions file must be a JSON array of strings");
    }
    std::vector<std::string> captions;
    for (const auto& c : j) captions.push_back(c.get<std::string>());
    return captions;
}

void write_captions(const fs::path& path, const std::vector<std::string>& captions) {
    dump_json_file(ordered_json(captions), path);
}

Sample load_sample(const DatasetManifest& manifest, const ManifestEntry& entry,
                   const LoadOptions& options) {
    Sample s;
    s.image_id = entry.id;
    s.scene_label = entry.scene;

    s.depth_gt = read_depth_file(manifest.resolve(entry.depth));
    for (std::size_t i = 0; i < s.depth_gt.values.size(); ++i) {
        if (!s.depth_gt.valid[i]) continue;
        const float v = s.depth_gt.values[i];
        if (!(v > 0.0f) || v > options.max_depth) s.depth_gt.valid[i] = 0;
    }

    std::string sidecar_scene;
    s.segmentation = read_segmentation(manifest.resolve(entry.segmentation), &sidecar_scene);
    if (!sidecar_scene.empty() && !entry.scene.empty() && sidecar_scene != entry.scene) {
        throw ValidationError("sample '" + entry.id + "': manifest scene '" + entry.scene +
                              "' contradicts sidecar scene '" + sidecar_scene + "'");
    }
    if (s.scene_label.empty()) s.scene_label = sidecar_scene;

    if (s.depth_gt.width != s.segmentation.width || s.depth_gt.height != s.segmentation.height) {
        throw ValidationError("sample '" + entry.id + "': depth is " + std::to_string(s.depth_gt.width) +
                              "x" + std::to_string(s.depth_gt.height) + " but segmentation is " +
                              std::to_string(s.segmentation.width) + "x" +
                              std::to_string(s.segmentation.height));
    }

    if (entry.rgb) s.rgb = read_png_rgb8(manifest.resolve(*entry.rgb));
    if (entry.captions) s.captions = read_captions(manifest.resolve(*entry.captions));
    return s;
}

void write_sample(const Sample& sample, const ManifestEntry& entry, const fs::path& out_dir) {
    auto target = [&](const std::string& rel) {
        const fs::path p = out_dir / rel;
        fs::create_directories(p.parent_path());
        return p;
    };
    write_depth_file(target(entry.depth), sample.depth_gt);
    write_segmentation(target(entry.segmentation), sample.segmentation, sample.scene_label);
    if (entry.rgb && sample.rgb) write_png_rgb8(target(*entry.rgb), *sample.rgb);
    if (entry.captions && !sample.captions.empty()) {
        write_captions(target(*entry.captions), sample.captions);
    }
}

PartitionResult partition_by_scene(const DatasetManifest& manifest,
                                   const std::set<std::string>& train_scenes,
                                   const std::set<std::string>& test_scenes) {
    std::vector<std::string> overlap;
    std::set_intersection(train_scenes.begin(), train_scenes.end(), test_scenes.begin(),
                          test_scenes.end(), std::back_inserter(overlap));
    if (!overlap.empty()) {
        throw ArgumentError("partition_by_scene: scene sets overlap on '" + overlap.front() + "'");
    }

    PartitionResult result;
    result.train.dataset = result.test.dataset = manifest.dataset;
    result.train.base_dir = result.test.base_dir = manifest.base_dir;
    result.train.split_tag = "train";
    result.test.split_tag = "test";

    for (const auto& e : manifest.entries) {
        if (train_scenes.count(e.scene)) {
            result.train.entries.push_back(e);
        } else if (test_scenes.count(e.scene)) {
            result.test.entries.push_back(e);
        } else {
            ++result.dropped;
        }
    }
    if (result.dropped > 0) {
        warn("partition_by_scene: dropped " + std::to_string(result.dropped) +
             " entries whose scene is in neither set");
    }
    return result;
}

DatasetManifest select_relation_complete_subset(const DatasetManifest& manifest, double lambda,
                                                bool unique_only, const LoadOptions& options) {
    const RelationConfig config{lambda};
    DatasetManifest out;
    out.dataset = manifest.dataset;
    out.split_tag = manifest.split_tag;
    out.base_dir = manifest.base_dir;

    for (const auto& entry : manifest.entries) {
        const Sample sample = load_sample(manifest, entry, options);
        const auto relations = extract_all(sample, config, unique_only);
        bool has_axis[3] = {false, false, false};
        for (const auto& r : relations) has_axis[static_cast<int>(r.axis)] = true;
        if (has_axis[0] && has_axis[1] && has_axis[2]) out.entries.push_back(entry);
    }
    return out;
}

}  // namespace depthlang
