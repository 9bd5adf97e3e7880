#pragma once

#include "depthlang/grid.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace depthlang {

/// Pixel rectangle, half-open: rows in [top, bottom), columns in [left, right).
struct CropRect {
    int top = 0;
    int left = 0;
    int bottom = 0;
    int right = 0;
};

struct EvalConfig {
    double max_depth = 10.0;
    double min_depth = 0.001;
    double delta_base = 1.25;
    std::optional<CropRect> crop;
    /// Permit nearest-neighbor resize of predictions to the gt resolution.
    bool allow_resize = false;

    void validate() const;
};

/// The six reported metrics, in table order (delta1..3 higher-is-better,
/// rmse/abs_rel/log10 lower-is-better).
struct SixMetrics {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    double rmse = 0.0;
    double abs_rel = 0.0;
    double log10 = 0.0;
};

inline constexpr std::array<const char*, 6> kMetricKeys = {"delta1",  "delta2",
                                                           "delta3",  "rmse",
                                                           "abs_rel", "log10"};

std::array<double, 6> to_array(const SixMetrics& m);
SixMetrics six_metrics_from_array(const std::array<double, 6>& values);

struct PixelMetrics {
    SixMetrics values;
    std::size_t valid_pixels = 0;
};

struct MetricReport {
    EvalConfig config;
    std::map<std::string, PixelMetrics> per_image;  // keyed by image_id; map keeps ascending order
    std::vector<std::string> excluded;              // degenerate images, no jointly valid pixels
    SixMetrics aggregate;
    std::size_t n_images = 0;
};

/// Metrics over jointly valid pixels: gt pixels valid and within (0, max_depth],
/// predictions clamped into [min_depth, max_depth]. delta thresholds use strict
/// '<'. Throws DegenerateError when no pixel qualifies.
PixelMetrics pixel_metrics(const DepthGrid& pred, const DepthGrid& gt, const EvalConfig& cfg);

/// Unweighted mean of per-image metrics in ascending image_id order.
MetricReport aggregate_metrics(const std::map<std::string, PixelMetrics>& per_image,
                               const EvalConfig& cfg,
                               const std::vector<std::string>& excluded = {});

void write_metric_report(const MetricReport& report, const std::filesystem::path& path);
MetricReport read_metric_report(const std::filesystem::path& path);

struct ComparisonReport {
    SixMetrics run_a;
    SixMetrics run_b;
    SixMetrics delta;                                 // b - a, per metric
    std::array<std::optional<double>, 6> percent;     // 100 * delta / a, absent when a == 0
    std::size_t n_images = 0;
};

/// Deltas between two runs over their common image set. Differing id sets
/// require intersect = true; disjoint sets always error.
ComparisonReport compare_reports(const MetricReport& run_a, const MetricReport& run_b,
                                 bool intersect = false);

}  // namespace depthlang
