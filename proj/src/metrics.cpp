#include "depthlang/metrics.hpp"

#include "depthlang/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace depthlang {

using ordered_json = nlohmann::ordered_json;

void EvalConfig::validate() const {
    if (!(min_depth > 0.0) || !(min_depth < max_depth)) {
        throw ArgumentError("eval config requires 0 < min_depth < max_depth");
    }
    if (!(delta_base > 1.0)) {
        throw ArgumentError("eval config requires delta_base > 1");
    }
    if (crop && (crop->top < 0 || crop->left < 0 || crop->bottom <= crop->top ||
                 crop->right <= crop->left)) {
        throw ArgumentError("eval config crop rectangle is empty or negative");
    }
}

std::array<double, 6> to_array(const SixMetrics& m) {
    return {m.delta1, m.delta2, m.delta3, m.rmse, m.abs_rel, m.log10};
}

SixMetrics six_metrics_from_array(const std::array<double, 6>& values) {
    SixMetrics m;
    m.delta1 = values[0];
    m.delta2 = values[1];
    m.delta3 = values[2];
    m.rmse = values[3];
    m.abs_rel = values[4];
    m.log10 = values[5];
    return m;
}

namespace {

/// Nearest-neighbor resample onto (width, height).
DepthGrid resize_nearest(const DepthGrid& src, int width, int height) {
    DepthGrid out;
    out.width = width;
    out.height = height;
    out.values.resize(static_cast<std::size_t>(width) * height);
    out.valid.resize(out.values.size());
    for (int row = 0; row < height; ++row) {
        const int src_row = std::min(src.height - 1,
                                     static_cast<int>(static_cast<std::int64_t>(row) * src.height / height));
        for (int col = 0; col < width; ++col) {
            const int src_col = std::min(src.width - 1,
                                         static_cast<int>(static_cast<std::int64_t>(col) * src.width / width));
            const std::size_t src_index = src.index(src_row, src_col);
            const std::size_t index = out.index(row, col);
            out.values[index] = src.values[src_index];
            out.valid[index] = src.valid[src_index];
        }
    }
    return out;
}

}  // namespace

PixelMetrics pixel_metrics(const DepthGrid& pred, const DepthGrid& gt, const EvalConfig& cfg) {
    cfg.validate();
    const DepthGrid* p = &pred;
    DepthGrid resized;
    if (pred.width != gt.width || pred.height != gt.height) {
        if (!cfg.allow_resize) {
            throw ValidationError("prediction is " + std::to_string(pred.width) + "x" +
                                  std::to_string(pred.height) + " but ground truth is " +
                                  std::to_string(gt.width) + "x" + std::to_string(gt.height) +
                                  " (pass the resize flag to resample)");
        }
        resized = resize_nearest(pred, gt.width, gt.height);
        p = &resized;
    }

    int row_begin = 0, row_end = gt.height, col_begin = 0, col_end = gt.width;
    if (cfg.crop) {
        row_begin = std::max(row_begin, cfg.crop->top);
        row_end = std::min(row_end, cfg.crop->bottom);
        col_begin = std::max(col_begin, cfg.crop->left);
        col_end = std::min(col_end, cfg.crop->right);
    }

    // Thresholds grow by repeated multiplication so delta2/delta3 agree with
    // the conventional 1.25^i values bit-for-bit across platforms.
    const double t1 = cfg.delta_base;
    const double t2 = t1 * cfg.delta_base;
    const double t3 = t2 * cfg.delta_base;

    std::size_t n = 0, in1 = 0, in2 = 0, in3 = 0;
    double sum_sq = 0.0, sum_rel = 0.0, sum_log = 0.0;
    for (int row = row_begin; row < row_end; ++row) {
        for (int col = col_begin; col < col_end; ++col) {
            const std::size_t index = gt.index(row, col);
            if (!gt.valid[index] || !p->valid[index]) continue;
            const double g = gt.values[index];
            if (!(g > 0.0) || g > cfg.max_depth) continue;
            const double pv = std::clamp(static_cast<double>(p->values[index]), cfg.min_depth,
                                         cfg.max_depth);
            ++n;
            const double diff = pv - g;
            sum_sq += diff * diff;
            sum_rel += std::abs(diff) / g;
            sum_log += std::abs(std::log10(pv) - std::log10(g));
            const double ratio = std::max(pv / g, g / pv);
            if (ratio < t1) ++in1;
            if (ratio < t2) ++in2;
            if (ratio < t3) ++in3;
        }
    }
    if (n == 0) {
        throw DegenerateError("no jointly valid pixels under the evaluation config");
    }

    PixelMetrics out;
    out.valid_pixels = n;
    const double count = static_cast<double>(n);
    out.values.delta1 = static_cast<double>(in1) / count;
    out.values.delta2 = static_cast<double>(in2) / count;
    out.values.delta3 = static_cast<double>(in3) / count;
    out.values.rmse = std::sqrt(sum_sq / count);
    out.values.abs_rel = sum_rel / count;
    out.values.log10 = sum_log / count;
    return out;
}

MetricReport aggregate_metrics(const std::map<std::string, PixelMetrics>& per_image,
                               const EvalConfig& cfg, const std::vector<std::string>& excluded) {
    if (per_image.empty()) {
        throw ArgumentError("aggregate requires at least one evaluated image");
    }
    MetricReport report;
    report.config = cfg;
    report.per_image = per_image;
    report.excluded = excluded;
    std::sort(report.excluded.begin(), report.excluded.end());
    report.n_images = per_image.size();

    std::array<double, 6> sums{};
    for (const auto& [image_id, metrics] : report.per_image) {
        const auto values = to_array(metrics.values);
        for (std::size_t i = 0; i < values.size(); ++i) sums[i] += values[i];
    }
    for (auto& s : sums) s /= static_cast<double>(report.n_images);
    report.aggregate = six_metrics_from_array(sums);
    return report;
}

namespace {

ordered_json six_to_json(const SixMetrics& m) {
    ordered_json j;
    const auto values = to_array(m);
    for (std::size_t i = 0; i < values.size(); ++i) j[kMetricKeys[i]] = values[i];
    return j;
}

SixMetrics six_from_json(const ordered_json& j) {
    std::array<double, 6> values{};
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = j.at(kMetricKeys[i]).get<double>();
    return six_metrics_from_array(values);
}

}  // namespace

void write_metric_report(const MetricReport& report, const std::filesystem::path& path) {
    ordered_json j;
    j["config"] = {{"max_depth", report.config.max_depth},
                   {"min_depth", report.config.min_depth},
                   {"delta_base", report.config.delta_base}};
    if (report.config.crop) {
        j["config"]["crop"] = {report.config.crop->top, report.config.crop->left,
                               report.config.crop->bottom, report.config.crop->right};
    }
    j["n_images"] = report.n_images;
    j["excluded"] = report.excluded;
    j["aggregate"] = six_to_json(report.aggregate);
    ordered_json rows = ordered_json::array();
    for (const auto& [image_id, metrics] : report.per_image) {
        ordered_json row = six_to_json(metrics.values);
        ordered_json entry;
        entry["image_id"] = image_id;
        entry.update(row);
        entry["valid_pixels"] = metrics.valid_pixels;
        rows.push_back(std::move(entry));
    }
    j["per_image"] = std::move(rows);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << "\n";
}

MetricReport read_metric_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open metric report '" + path.string() + "'");
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("metric report '" + path.string() + "': " + e.what());
    }
    try {
        MetricReport report;
        const auto& cfg = j.at("config");
        report.config.max_depth = cfg.at("max_depth").get<double>();
        report.config.min_depth = cfg.at("min_depth").get<double>();
        report.config.delta_base = cfg.at("delta_base").get<double>();
        if (cfg.contains("crop")) {
            const auto& c = cfg.at("crop");
            report.config.crop = CropRect{c.at(0).get<int>(), c.at(1).get<int>(),
                                          c.at(2).get<int>(), c.at(3).get<int>()};
        }
        report.n_images = j.at("n_images").get<std::size_t>();
        report.excluded = j.at("excluded").get<std::vector<std::string>>();
        report.aggregate = six_from_json(j.at("aggregate"));
        for (const auto& entry : j.at("per_image")) {
            PixelMetrics metrics;
            metrics.values = six_from_json(entry);
            metrics.valid_pixels = entry.at("valid_pixels").get<std::size_t>();
            report.per_image.emplace(entry.at("image_id").get<std::string>(), metrics);
        }
        if (report.per_image.size() != report.n_images) {
            throw ValidationError("metric report '" + path.string() +
                                  "': n_images disagrees with per_image rows");
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("metric report '" + path.string() + "': " + e.what());
    }
}

ComparisonReport compare_reports(const MetricReport& run_a, const MetricReport& run_b,
                                 bool intersect) {
    std::vector<std::string> common;
    for (const auto& [image_id, _] : run_a.per_image) {
        if (run_b.per_image.count(image_id)) common.push_back(image_id);
    }
    if (common.empty()) {
        throw ArgumentError("the two runs share no image ids");
    }
    if (!intersect && (common.size() != run_a.per_image.size() ||
                       common.size() != run_b.per_image.size())) {
        throw ArgumentError("the two runs cover different image sets (" +
                            std::to_string(run_a.per_image.size()) + " vs " +
                            std::to_string(run_b.per_image.size()) +
                            "); pass the intersect flag to compare the overlap");
    }

    auto mean_over = [&common](const MetricReport& report) {
        std::array<double, 6> sums{};
        for (const auto& image_id : common) {
            const auto values = to_array(report.per_image.at(image_id).values);
            for (std::size_t i = 0; i < values.size(); ++i) sums[i] += values[i];
        }
        for (auto& s : sums) s /= static_cast<double>(common.size());
        return sums;
    };

    const auto a = mean_over(run_a);
    const auto b = mean_over(run_b);
    ComparisonReport out;
    out.n_images = common.size();
    out.run_a = six_metrics_from_array(a);
    out.run_b = six_metrics_from_array(b);
    std::array<double, 6> delta{};
    for (std::size_t i = 0; i < delta.size(); ++i) {
        delta[i] = b[i] - a[i];
        if (a[i] != 0.0) out.percent[i] = 100.0 * delta[i] / a[i];
    }
    out.delta = six_metrics_from_array(delta);
    return out;
}

}  // namespace depthlang
