#pragma once

#include "depthlang/grid.hpp"
#include "depthlang/object_stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace depthlang {

enum class Axis { horizontal, vertical, depth };
enum class Direction { left, right, above, below, front, behind };

const char* axis_name(Axis axis);
const char* direction_name(Direction dir);
Axis parse_axis(const std::string& name);

/// The axis a direction belongs to (left/right -> horizontal, ...).
Axis axis_of(Direction dir);
/// left<->right, above<->below, front<->behind.
Direction opposite(Direction dir);

/// A directed relation between two instances of one sample, on one axis.
struct SpatialRelation {
    std::uint16_t subject = 0;
    std::uint16_t object = 0;
    Axis axis = Axis::horizontal;
    Direction direction = Direction::left;

    friend bool operator==(const SpatialRelation&, const SpatialRelation&) = default;
};

struct RelationConfig {
    double lambda = 1.0;  // overlap-control factor, must be >= 0
};

/// Evaluates the relation rules for the ordered pair (a, b); emits relations
/// with subject = a, at most one per axis:
///   horizontal exists iff |col_a - col_b| > lambda*(R_a + R_b), a left of b iff col_a < col_b;
///   vertical   exists iff |row_a - row_b| > lambda*(R_a + R_b), a above b iff row_a < row_b;
///   depth      exists iff |mu_a - mu_b| > (M_a - mu_a) + (M_b - mu_b),
///              a in front of b iff mu_a + sigma_a < mu_b + sigma_b, else behind.
/// All comparisons are strict; exact ties on the front/behind test fall to
/// the "behind" branch. The depth existence test (means and max spreads) and
/// its direction test (mu + sigma) are separate rules and may disagree with
/// naive mean ordering; both are applied verbatim.
std::vector<SpatialRelation> extract_pair(const ObjectInstance& a, const ObjectInstance& b,
                                          const RelationConfig& config);

/// extract_pair over all ordered pairs of the given objects, sorted by
/// (subject id, object id, axis).
std::vector<SpatialRelation> extract_relations(const std::vector<ObjectInstance>& objects,
                                               const RelationConfig& config);

/// Convenience wrapper: computes object statistics (unique-class objects
/// when unique_only, all non-degenerate objects otherwise) and extracts.
std::vector<SpatialRelation> extract_all(const Sample& sample, const RelationConfig& config,
                                         bool unique_only);

}  // namespace depthlang
