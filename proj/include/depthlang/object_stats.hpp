#pragma once

#include "depthlang/grid.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace depthlang {

/// Per-object geometry and depth statistics.
///
/// Coordinate convention, used everywhere downstream: centroid_row increases
/// downward (it decides above/below), centroid_col increases rightward (it
/// decides left/right). Geometry is computed over the full instance mask;
/// depth statistics only over the mask's depth-valid pixels. pixel_count is
/// the full mask size, including depth-invalid pixels.
struct ObjectInstance {
    std::uint16_t instance_id = 0;
    std::string class_name;
    double centroid_row = 0.0;
    double centroid_col = 0.0;
    double max_radius = 0.0;     // max distance from centroid to a mask pixel
    double depth_mean = 0.0;
    double depth_std = 0.0;      // population standard deviation
    double depth_max = 0.0;
    std::size_t pixel_count = 0;
    std::size_t valid_depth_count = 0;
};

/// Computes statistics for one instance id.
/// Throws NotFoundError if the id has no pixels in the segmentation and
/// DegenerateError if none of its pixels carry valid depth.
ObjectInstance compute_object_stats(const DepthGrid& depth, const SegmentationMap& seg,
                                    std::uint16_t instance_id);

/// Class-name -> instance count, over the ids present in the id grid.
/// Degenerate instances count toward their class like any other.
std::map<std::string, int> class_census(const SegmentationMap& seg);

/// Instances whose class occurs exactly once in the sample, ordered by
/// ascending instance id. Degenerate instances still occupy their class slot
/// in the census but are skipped (with a warning) in the output.
std::vector<ObjectInstance> unique_objects(const Sample& sample);

/// All non-degenerate instances, ordered by ascending instance id.
std::vector<ObjectInstance> all_objects(const Sample& sample);

}  // namespace depthlang
