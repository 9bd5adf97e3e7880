#pragma once

#include "depthlang/masking.hpp"
#include "depthlang/metrics.hpp"
#include "depthlang/relations.hpp"
#include "depthlang/sentences.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace depthlang {

const char* corpus_mode_name(CorpusMode mode);
CorpusMode parse_corpus_mode(const std::string& name);

/// Fixed table formatting: three decimals, round to nearest.
std::string format_fixed3(double v);
/// Same, with an explicit sign for delta rows.
std::string format_signed3(double v);
/// Score-delta formatting: three decimals truncated toward zero, matching the
/// single-precision score tables the summaries reproduce.
std::string format_delta3(float v);

/// One labeled line of the six-metric table.
struct MetricRow {
    std::string label;
    SixMetrics values;
};

/// Markdown table with the columns d1/d2/d3 up, RMSE/Abs.REL/Log10 down.
std::string metrics_markdown(const std::vector<MetricRow>& rows);

std::string comparison_markdown(const ComparisonReport& cmp, const std::string& label_a,
                                const std::string& label_b);
void write_comparison_json(const ComparisonReport& cmp, const std::string& label_a,
                           const std::string& label_b, const std::filesystem::path& path);

/// JSONL emission, one compact object per line.
void append_corpus_group(std::ostream& out, const CorpusGroup& group);
void append_relation(std::ostream& out, const std::string& image_id, const SpatialRelation& rel,
                     const std::map<std::uint16_t, std::string>& class_names);
void append_triplet(std::ostream& out, const std::string& image_id,
                    const AdversarialTriplet& triplet);

void write_mask_receipt(const MaskReceipt& receipt, const std::filesystem::path& path);

/// A triplet read back from JSONL (texts only).
struct TripletRow {
    std::string image_id;
    Axis axis = Axis::horizontal;
    std::string original;
    std::string relation_switch;
    std::string object_switch;
};
std::vector<TripletRow> read_triplets_jsonl(const std::filesystem::path& path);

/// Externally computed similarity scores for one triplet.
struct ScoredTriplet {
    std::string image_id;
    Axis axis = Axis::horizontal;
    double original = 0.0;
    double relation_switch = 0.0;
    double object_switch = 0.0;
};
/// CSV with header image_id,axis,original,relation_switch,object_switch.
std::vector<ScoredTriplet> read_scores_csv(const std::filesystem::path& path);

struct AdversarialAxisSummary {
    Axis axis = Axis::horizontal;
    std::size_t n = 0;
    double mean_original = 0.0;
    double mean_relation_switch = 0.0;
    double mean_object_switch = 0.0;
    /// original minus switched means, differenced in single precision to
    /// match the precision of the score tables being reproduced.
    float delta_rel = 0.0f;
    float delta_obj = 0.0f;
    bool delta_rel_negative = false;
    bool delta_obj_negative = false;
};

/// Per-axis score means and deltas. Every triplet must have a score row for
/// its (image_id, axis) and vice versa; mismatched counts raise
/// ValidationError.
std::vector<AdversarialAxisSummary> summarize_adversarial(
    const std::vector<TripletRow>& triplets, const std::vector<ScoredTriplet>& scores);

std::string adversarial_markdown(const std::vector<AdversarialAxisSummary>& rows);
void write_adversarial_json(const std::vector<AdversarialAxisSummary>& rows,
                            const std::filesystem::path& path);

/// Words = whitespace-separated tokens after dropping punctuation characters.
std::size_t caption_word_count(const std::string& caption);

struct SceneStats {
    std::string scene;
    std::size_t n_images = 0;
    double mean_objects = 0.0;
    double mean_unique_objects = 0.0;
    std::optional<double> mean_caption_words;  // absent when no captions anywhere
    double mean_horizontal = 0.0;              // relations per image, all-objects mode
    double mean_vertical = 0.0;
    double mean_depth = 0.0;
};

std::string scene_stats_markdown(const std::vector<SceneStats>& rows);
void write_scene_stats_json(const std::vector<SceneStats>& rows,
                            const std::filesystem::path& path);

/// Provenance sidecar written next to every command's outputs.
struct RunRecord {
    std::string run_id;
    std::string command;
    std::map<std::string, std::string> config;  // effective settings, flattened
    std::string manifest_hash;                  // empty when the command takes no manifest
    std::vector<std::string> outputs;
    std::string timestamp;
};

/// ISO-8601 UTC; honors SOURCE_DATE_EPOCH for reproducible archives.
std::string utc_timestamp();
std::string make_run_id(const std::string& command,
                        const std::map<std::string, std::string>& config,
                        const std::string& manifest_hash);
void write_run_record(const RunRecord& record, const std::filesystem::path& path);

}  // namespace depthlang
