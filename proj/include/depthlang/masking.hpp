#pragma once

#include "depthlang/grid.hpp"
#include "depthlang/object_stats.hpp"
#include "depthlang/relations.hpp"
#include "depthlang/sentences.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace depthlang {

/// How masked pixels are filled.
struct FillPolicy {
    enum class Kind { zero, mean_rgb, constant };
    Kind kind = Kind::zero;
    std::uint8_t value = 0;  // used by Kind::constant

    static FillPolicy zero() { return {}; }
    static FillPolicy mean_rgb() { return {Kind::mean_rgb, 0}; }
    static FillPolicy constant(std::uint8_t v) { return {Kind::constant, v}; }
};

/// Parses "zero", "mean_rgb", or "constant" (value supplied separately).
FillPolicy parse_fill_policy(const std::string& name, int constant_value);

enum class CompensationPolicy { depth_axis_preferred, none };

struct MaskSpec {
    std::uint16_t target_instance = 0;
    FillPolicy fill;
    CompensationPolicy compensation = CompensationPolicy::depth_axis_preferred;
};

/// Inclusive pixel bounding box of the masked region.
struct PixelBox {
    int min_row = 0;
    int min_col = 0;
    int max_row = 0;
    int max_col = 0;
};

struct MaskReceipt {
    std::string image_id;
    std::uint16_t target_id = 0;
    std::string target_class;
    std::size_t pixels_masked = 0;
    PixelBox bbox;
    std::string compensation_text;  // empty when compensation is off or unavailable
};

/// Replaces exactly the target instance's pixels in the rgb image per the fill
/// policy. The target's class must occur exactly once in the segmentation.
/// The receipt's compensation_text is left empty; compose it separately.
std::pair<RgbImage, MaskReceipt> mask_object(const Sample& sample, const MaskSpec& spec);

/// Canonical sentence placing the masked object relative to a partner, chosen
/// by axis priority depth > horizontal > vertical, ties broken by ascending
/// partner instance id. Throws NotFoundError when the target has no relation.
SentenceRecord compensation_sentence(const Sample& sample, const ObjectInstance& target,
                                     const std::vector<SpatialRelation>& relations,
                                     const TemplateSet& templates);

}  // namespace depthlang
