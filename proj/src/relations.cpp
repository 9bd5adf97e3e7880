#include "depthlang/relations.hpp"

#include "depthlang/error.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace depthlang {

const char* axis_name(Axis axis) {
    switch (axis) {
        case Axis::horizontal: return "horizontal";
        case Axis::vertical: return "vertical";
        case Axis::depth: return "depth";
    }
    return "?";
}

const char* direction_name(Direction dir) {
    switch (dir) {
        case Direction::left: return "left";
        case Direction::right: return "right";
        case Direction::above: return "above";
        case Direction::below: return "below";
        case Direction::front: return "front";
        case Direction::behind: return "behind";
    }
    return "?";
}

Axis parse_axis(const std::string& name) {
    if (name == "horizontal") return Axis::horizontal;
    if (name == "vertical") return Axis::vertical;
    if (name == "depth") return Axis::depth;
    throw ArgumentError("unknown axis '" + name + "'");
}

Axis axis_of(Direction dir) {
    switch (dir) {
        case Direction::left:
        case Direction::right: return Axis::horizontal;
        case Direction::above:
        case Direction::below: return Axis::vertical;
        case Direction::front:
        case Direction::behind: return Axis::depth;
    }
    return Axis::horizontal;
}

Direction opposite(Direction dir) {
    switch (dir) {
        case Direction::left: return Direction::right;
        case Direction::right: return Direction::left;
        case Direction::above: return Direction::below;
        case Direction::below: return Direction::above;
        case Direction::front: return Direction::behind;
        case Direction::behind: return Direction::front;
    }
    return dir;
}

std::vector<SpatialRelation> extract_pair(const ObjectInstance& a, const ObjectInstance& b,
                                          const RelationConfig& config) {
    if (config.lambda < 0.0) {
        throw ArgumentError("relation config: lambda must be non-negative");
    }
    if (a.instance_id == b.instance_id) {
        throw ArgumentError("extract_pair: subject and object must be distinct instances");
    }

    std::vector<SpatialRelation> out;
    const double overlap_gate = config.lambda * (a.max_radius + b.max_radius);

    if (std::abs(a.centroid_col - b.centroid_col) > overlap_gate) {
        out.push_back({a.instance_id, b.instance_id, Axis::horizontal,
                       a.centroid_col < b.centroid_col ? Direction::left : Direction::right});
    }
    if (std::abs(a.centroid_row - b.centroid_row) > overlap_gate) {
        out.push_back({a.instance_id, b.instance_id, Axis::vertical,
                       a.centroid_row < b.centroid_row ? Direction::above : Direction::below});
    }

    const double spread = (a.depth_max - a.depth_mean) + (b.depth_max - b.depth_mean);
    if (std::abs(a.depth_mean - b.depth_mean) > spread) {
        // Existence and direction use different statistics on purpose; ties
        // on the direction test fall to "behind".
        const bool in_front = a.depth_mean + a.depth_std < b.depth_mean + b.depth_std;
        out.push_back({a.instance_id, b.instance_id, Axis::depth,
                       in_front ? Direction::front : Direction::behind});
    }
    return out;
}

std::vector<SpatialRelation> extract_relations(const std::vector<ObjectInstance>& objects,
                                               const RelationConfig& config) {
    std::vector<SpatialRelation> out;
    for (const auto& a : objects) {
        for (const auto& b : objects) {
            if (a.instance_id == b.instance_id) continue;
            auto rels = extract_pair(a, b, config);
            out.insert(out.end(), rels.begin(), rels.end());
        }
    }
    std::sort(out.begin(), out.end(), [](const SpatialRelation& x, const SpatialRelation& y) {
        return std::tuple(x.subject, x.object, static_cast<int>(x.axis)) <
               std::tuple(y.subject, y.object, static_cast<int>(y.axis));
    });
    return out;
}

std::vector<SpatialRelation> extract_all(const Sample& sample, const RelationConfig& config,
                                         bool unique_only) {
    const auto objects = unique_only ? unique_objects(sample) : all_objects(sample);
    return extract_relations(objects, config);
}

}  // namespace depthlang
