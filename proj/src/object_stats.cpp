#include "depthlang/object_stats.hpp"

#include "depthlang/error.hpp"

#include <algorithm>
#include <cmath>

namespace depthlang {

ObjectInstance compute_object_stats(const DepthGrid& depth, const SegmentationMap& seg,
                                    std::uint16_t instance_id) {
    if (depth.width != seg.width || depth.height != seg.height) {
        throw ArgumentError("compute_object_stats: depth and segmentation dimensions differ");
    }

    ObjectInstance obj;
    obj.instance_id = instance_id;
    if (auto it = seg.class_of.find(instance_id); it != seg.class_of.end()) {
        obj.class_name = it->second;
    }

    double row_sum = 0.0, col_sum = 0.0;
    double depth_sum = 0.0, depth_sq_sum = 0.0;
    double depth_max = 0.0;
    std::size_t n_mask = 0, n_valid = 0;

    for (int r = 0; r < seg.height; ++r) {
        for (int c = 0; c < seg.width; ++c) {
            if (seg.id_at(r, c) != instance_id) continue;
            ++n_mask;
            row_sum += r;
            col_sum += c;
            if (depth.is_valid(r, c)) {
                const double d = depth.at(r, c);
                depth_sum += d;
                depth_sq_sum += d * d;
                depth_max = n_valid == 0 ? d : std::max(depth_max, d);
                ++n_valid;
            }
        }
    }

    if (n_mask == 0) {
        throw NotFoundError("instance id " + std::to_string(instance_id) +
                            " has no pixels in the segmentation");
    }
    if (n_valid == 0) {
        throw DegenerateError("instance id " + std::to_string(instance_id) + " (" +
                              obj.class_name + ") has no valid depth pixels");
    }

    obj.pixel_count = n_mask;
    obj.valid_depth_count = n_valid;
    obj.centroid_row = row_sum / static_cast<double>(n_mask);
    obj.centroid_col = col_sum / static_cast<double>(n_mask);

    double max_sq = 0.0;
    for (int r = 0; r < seg.height; ++r) {
        for (int c = 0; c < seg.width; ++c) {
            if (seg.id_at(r, c) != instance_id) continue;
            const double dr = r - obj.centroid_row;
            const double dc = c - obj.centroid_col;
            max_sq = std::max(max_sq, dr * dr + dc * dc);
        }
    }
    obj.max_radius = std::sqrt(max_sq);

    obj.depth_mean = depth_sum / static_cast<double>(n_valid);
    obj.depth_max = depth_max;
    const double variance =
        std::max(0.0, depth_sq_sum / static_cast<double>(n_valid) - obj.depth_mean * obj.depth_mean);
    obj.depth_std = std::sqrt(variance);
    return obj;
}

std::map<std::string, int> class_census(const SegmentationMap& seg) {
    // Which ids actually have pixels; sidecar entries without pixels are not
    // instances.
    std::map<std::uint16_t, bool> present;
    for (std::uint16_t id : seg.ids) {
        if (id != 0) present[id] = true;
    }
    std::map<std::string, int> census;
    for (const auto& [id, _] : present) {
        auto it = seg.class_of.find(id);
        if (it != seg.class_of.end()) ++census[it->second];
    }
    return census;
}

namespace {

std::vector<ObjectInstance> collect_objects(const Sample& sample, bool unique_only) {
    const auto census = class_census(sample.segmentation);

    std::vector<std::uint16_t> ids;
    for (std::uint16_t id : sample.segmentation.ids) {
        if (id != 0) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<ObjectInstance> objects;
    for (std::uint16_t id : ids) {
        if (unique_only) {
            auto cls = sample.segmentation.class_of.find(id);
            if (cls == sample.segmentation.class_of.end()) continue;
            auto count = census.find(cls->second);
            if (count == census.end() || count->second != 1) continue;
        }
        try {
            objects.push_back(compute_object_stats(sample.depth_gt, sample.segmentation, id));
        } catch (const DegenerateError& e) {
            warn(sample.image_id + ": skipping degenerate object: " + e.what());
        }
    }
    return objects;
}

}  // namespace

std::vector<ObjectInstance> unique_objects(const Sample& sample) {
    return collect_objects(sample, true);
}

std::vector<ObjectInstance> all_objects(const Sample& sample) {
    return collect_objects(sample, false);
}

}  // namespace depthlang
