#include "depthlang/masking.hpp"

#include "depthlang/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace depthlang {

FillPolicy parse_fill_policy(const std::string& name, int constant_value) {
    if (name == "zero") return FillPolicy::zero();
    if (name == "mean_rgb") return FillPolicy::mean_rgb();
    if (name == "constant") {
        if (constant_value < 0 || constant_value > 255) {
            throw ArgumentError("constant fill value must be in [0, 255], got " +
                                std::to_string(constant_value));
        }
        return FillPolicy::constant(static_cast<std::uint8_t>(constant_value));
    }
    throw ArgumentError("unknown fill policy '" + name + "' (expected zero, mean_rgb, or constant)");
}

namespace {

/// Per-channel mean over the whole image, rounded half-up to an integer.
std::array<std::uint8_t, 3> channel_means(const RgbImage& rgb) {
    std::array<double, 3> sums{0.0, 0.0, 0.0};
    const std::size_t pixel_count = static_cast<std::size_t>(rgb.width) * rgb.height;
    for (std::size_t p = 0; p < pixel_count; ++p) {
        for (int c = 0; c < 3; ++c) sums[c] += rgb.pixels[p * 3 + c];
    }
    std::array<std::uint8_t, 3> means{};
    for (int c = 0; c < 3; ++c) {
        const double mean = sums[c] / static_cast<double>(pixel_count);
        means[c] = static_cast<std::uint8_t>(
            std::min(255.0, std::floor(mean + 0.5)));
    }
    return means;
}

}  // namespace

std::pair<RgbImage, MaskReceipt> mask_object(const Sample& sample, const MaskSpec& spec) {
    if (!sample.rgb) {
        throw ValidationError("sample '" + sample.image_id + "' has no rgb image to mask");
    }
    const SegmentationMap& seg = sample.segmentation;
    auto class_it = seg.class_of.find(spec.target_instance);
    if (class_it == seg.class_of.end()) {
        throw NotFoundError("instance id " + std::to_string(spec.target_instance) +
                            " not present in sample '" + sample.image_id + "'");
    }
    const std::string& target_class = class_it->second;
    std::size_t class_count = 0;
    for (const auto& [id, cls] : seg.class_of) {
        if (cls == target_class) ++class_count;
    }
    if (class_count != 1) {
        throw PolicyError("class '" + target_class + "' occurs " + std::to_string(class_count) +
                          " times in sample '" + sample.image_id +
                          "'; only unique-class objects may be masked");
    }
    if (seg.width != sample.rgb->width || seg.height != sample.rgb->height) {
        throw ValidationError("sample '" + sample.image_id +
                              "': segmentation and rgb dimensions differ");
    }

    RgbImage masked = *sample.rgb;
    std::array<std::uint8_t, 3> fill{0, 0, 0};
    switch (spec.fill.kind) {
        case FillPolicy::Kind::zero: break;
        case FillPolicy::Kind::mean_rgb: fill = channel_means(masked); break;
        case FillPolicy::Kind::constant:
            fill = {spec.fill.value, spec.fill.value, spec.fill.value};
            break;
    }

    MaskReceipt receipt;
    receipt.image_id = sample.image_id;
    receipt.target_id = spec.target_instance;
    receipt.target_class = target_class;
    receipt.bbox = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), -1, -1};

    for (int row = 0; row < seg.height; ++row) {
        for (int col = 0; col < seg.width; ++col) {
            const std::size_t index = static_cast<std::size_t>(row) * seg.width + col;
            if (seg.ids[index] != spec.target_instance) continue;
            for (int c = 0; c < 3; ++c) masked.pixels[index * 3 + c] = fill[c];
            ++receipt.pixels_masked;
            receipt.bbox.min_row = std::min(receipt.bbox.min_row, row);
            receipt.bbox.min_col = std::min(receipt.bbox.min_col, col);
            receipt.bbox.max_row = std::max(receipt.bbox.max_row, row);
            receipt.bbox.max_col = std::max(receipt.bbox.max_col, col);
        }
    }
    if (receipt.pixels_masked == 0) {
        throw NotFoundError("instance id " + std::to_string(spec.target_instance) +
                            " has no pixels in sample '" + sample.image_id + "'");
    }
    return {std::move(masked), std::move(receipt)};
}

SentenceRecord compensation_sentence(const Sample& sample, const ObjectInstance& target,
                                     const std::vector<SpatialRelation>& relations,
                                     const TemplateSet& templates) {
    const SpatialRelation* best = nullptr;
    auto axis_rank = [](Axis axis) {
        switch (axis) {
            case Axis::depth: return 0;
            case Axis::horizontal: return 1;
            case Axis::vertical: return 2;
        }
        return 3;
    };
    for (const auto& rel : relations) {
        if (rel.subject != target.instance_id) continue;
        if (!best || axis_rank(rel.axis) < axis_rank(best->axis) ||
            (axis_rank(rel.axis) == axis_rank(best->axis) && rel.object < best->object)) {
            best = &rel;
        }
    }
    if (!best) {
        throw NotFoundError("object '" + target.class_name + "' (id " +
                            std::to_string(target.instance_id) + ") in sample '" + sample.image_id +
                            "' participates in no spatial relation");
    }
    auto records = relation_sentence(sample.image_id, *best, sample.segmentation.class_of,
                                     templates, PhrasingVariant::canonical);
    return records.front();
}

}  // namespace depthlang
