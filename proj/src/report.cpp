#include "depthlang/report.hpp"

#include "depthlang/error.hpp"
#include "depthlang/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

namespace depthlang {

using ordered_json = nlohmann::ordered_json;

const char* corpus_mode_name(CorpusMode mode) {
    return mode == CorpusMode::stack ? "stack" : "per_template";
}

CorpusMode parse_corpus_mode(const std::string& name) {
    if (name == "stack") return CorpusMode::stack;
    if (name == "per_template") return CorpusMode::per_template;
    throw ArgumentError("unknown corpus mode '" + name + "' (expected stack or per_template)");
}

std::string format_fixed3(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3f", v);
    return buffer;
}

std::string format_signed3(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%+.3f", v);
    return buffer;
}

std::string format_delta3(float v) {
    const long long units = static_cast<long long>(std::floor(std::abs(static_cast<double>(v)) * 1000.0));
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%s%lld.%03lld", std::signbit(v) ? "-" : "",
                  units / 1000, units % 1000);
    return buffer;
}

namespace {

constexpr const char* kTableHeader =
    "| \xce\xb4""1\xe2\x86\x91 | \xce\xb4""2\xe2\x86\x91 | \xce\xb4""3\xe2\x86\x91"
    " | RMSE\xe2\x86\x93 | Abs.REL\xe2\x86\x93 | Log10\xe2\x86\x93 |";

std::string header_row(const std::string& label_column) {
    // "| <label> " + the six metric columns.
    return "| " + label_column + " " + kTableHeader;
}

std::string divider(std::size_t columns) {
    std::string out = "|";
    for (std::size_t i = 0; i < columns; ++i) out += " --- |";
    return out;
}

const std::string& class_name_of(const std::map<std::uint16_t, std::string>& class_names,
                                 std::uint16_t id) {
    auto it = class_names.find(id);
    if (it == class_names.end()) {
        throw NotFoundError("no class name for instance id " + std::to_string(id));
    }
    return it->second;
}

}  // namespace

std::string metrics_markdown(const std::vector<MetricRow>& rows) {
    std::string out = header_row("Setting") + "\n" + divider(7) + "\n";
    for (const auto& row : rows) {
        out += "| " + row.label;
        for (double v : to_array(row.values)) out += " | " + format_fixed3(v);
        out += " |\n";
    }
    return out;
}

std::string comparison_markdown(const ComparisonReport& cmp, const std::string& label_a,
                                const std::string& label_b) {
    std::string out = header_row("Run") + "\n" + divider(7) + "\n";
    auto value_row = [&out](const std::string& label, const SixMetrics& m) {
        out += "| " + label;
        for (double v : to_array(m)) out += " | " + format_fixed3(v);
        out += " |\n";
    };
    value_row(label_a, cmp.run_a);
    value_row(label_b, cmp.run_b);
    out += "| \xce\x94 (" + label_b + "\xe2\x88\x92" + label_a + ")";
    for (double v : to_array(cmp.delta)) out += " | " + format_signed3(v);
    out += " |\n| \xce\x94%";
    for (const auto& percent : cmp.percent) {
        if (percent) {
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), "%+.1f%%", *percent);
            out += std::string(" | ") + buffer;
        } else {
            out += " | n/a";
        }
    }
    out += " |\n";
    return out;
}

namespace {

ordered_json six_json(const SixMetrics& m) {
    ordered_json j;
    const auto values = to_array(m);
    for (std::size_t i = 0; i < values.size(); ++i) j[kMetricKeys[i]] = values[i];
    return j;
}

void dump_to(const ordered_json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << "\n";
}

}  // namespace

void write_comparison_json(const ComparisonReport& cmp, const std::string& label_a,
                           const std::string& label_b, const std::filesystem::path& path) {
    ordered_json j;
    j["label_a"] = label_a;
    j["label_b"] = label_b;
    j["n_images"] = cmp.n_images;
    j["run_a"] = six_json(cmp.run_a);
    j["run_b"] = six_json(cmp.run_b);
    j["delta"] = six_json(cmp.delta);
    ordered_json percent;
    for (std::size_t i = 0; i < cmp.percent.size(); ++i) {
        if (cmp.percent[i]) {
            percent[kMetricKeys[i]] = *cmp.percent[i];
        } else {
            percent[kMetricKeys[i]] = nullptr;
        }
    }
    j["percent"] = std::move(percent);
    dump_to(j, path);
}

void append_corpus_group(std::ostream& out, const CorpusGroup& group) {
    ordered_json j;
    j["image_id"] = group.image_id;
    j["mode"] = corpus_mode_name(group.mode);
    j["aggregate"] = group.aggregate;
    ordered_json sentences = ordered_json::array();
    for (const auto& record : group.sentences) {
        ordered_json s;
        s["text"] = record.text;
        s["kind"] = sentence_kind_name(record.kind);
        if (record.relation) {
            s["axis"] = axis_name(record.relation->axis);
            s["direction"] = direction_name(record.relation->direction);
        }
        if (record.subject_class) s["subject"] = *record.subject_class;
        if (record.object_class) s["object"] = *record.object_class;
        sentences.push_back(std::move(s));
    }
    j["sentences"] = std::move(sentences);
    out << j.dump() << "\n";
}

void append_relation(std::ostream& out, const std::string& image_id, const SpatialRelation& rel,
                     const std::map<std::uint16_t, std::string>& class_names) {
    ordered_json j;
    j["image_id"] = image_id;
    j["subject_id"] = rel.subject;
    j["subject_class"] = class_name_of(class_names, rel.subject);
    j["object_id"] = rel.object;
    j["object_class"] = class_name_of(class_names, rel.object);
    j["axis"] = axis_name(rel.axis);
    j["direction"] = direction_name(rel.direction);
    out << j.dump() << "\n";
}

void append_triplet(std::ostream& out, const std::string& image_id,
                    const AdversarialTriplet& triplet) {
    ordered_json j;
    j["image_id"] = image_id;
    j["axis"] = axis_name(triplet.axis);
    j["original"] = triplet.original;
    j["relation_switch"] = triplet.relation_switch;
    j["object_switch"] = triplet.object_switch;
    out << j.dump() << "\n";
}

void write_mask_receipt(const MaskReceipt& receipt, const std::filesystem::path& path) {
    ordered_json j;
    j["image_id"] = receipt.image_id;
    j["target_id"] = receipt.target_id;
    j["target_class"] = receipt.target_class;
    j["pixels_masked"] = receipt.pixels_masked;
    j["bbox"] = {receipt.bbox.min_row, receipt.bbox.min_col, receipt.bbox.max_row,
                 receipt.bbox.max_col};
    j["compensation_text"] = receipt.compensation_text;
    dump_to(j, path);
}

std::vector<TripletRow> read_triplets_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open triplets file '" + path.string() + "'");
    std::vector<TripletRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = ordered_json::parse(line);
            TripletRow row;
            row.image_id = j.at("image_id").get<std::string>();
            row.axis = parse_axis(j.at("axis").get<std::string>());
            row.original = j.at("original").get<std::string>();
            row.relation_switch = j.at("relation_switch").get<std::string>();
            row.object_switch = j.at("object_switch").get<std::string>();
            rows.push_back(std::move(row));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("triplets file '" + path.string() + "' line " +
                              std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<ScoredTriplet> read_scores_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open scores file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw FormatError("scores file '" + path.string() + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected = "image_id,axis,original,relation_switch,object_switch";
    if (line != expected) {
        throw FormatError("scores file '" + path.string() + "': header must be '" + expected +
                          "', got '" + line + "'");
    }
    std::vector<ScoredTriplet> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw FormatError("scores file '" + path.string() + "' line " +
                              std::to_string(line_no) + ": expected 5 fields, got " +
                              std::to_string(fields.size()));
        }
        try {
            ScoredTriplet row;
            row.image_id = fields[0];
            row.axis = parse_axis(fields[1]);
            row.original = std::stod(fields[2]);
            row.relation_switch = std::stod(fields[3]);
            row.object_switch = std::stod(fields[4]);
            rows.push_back(std::move(row));
        } catch (const std::invalid_argument&) {
            throw FormatError("scores file '" + path.string() + "' line " +
                              std::to_string(line_no) + ": non-numeric score");
        }
    }
    return rows;
}

std::vector<AdversarialAxisSummary> summarize_adversarial(
    const std::vector<TripletRow>& triplets, const std::vector<ScoredTriplet>& scores) {
    // Scores carry no sentence text, so rows pair up by (image_id, axis)
    // count; any imbalance means the two files disagree.
    std::map<std::pair<std::string, Axis>, long long> balance;
    for (const auto& t : triplets) ++balance[{t.image_id, t.axis}];
    for (const auto& s : scores) --balance[{s.image_id, s.axis}];
    for (const auto& [key, count] : balance) {
        if (count > 0) {
            throw ValidationError("no score row for triplet (image '" + key.first + "', axis " +
                                  axis_name(key.second) + ")");
        }
        if (count < 0) {
            throw ValidationError("score row without a triplet (image '" + key.first +
                                  "', axis " + axis_name(key.second) + ")");
        }
    }

    auto sorted = scores;
    std::sort(sorted.begin(), sorted.end(), [](const ScoredTriplet& a, const ScoredTriplet& b) {
        return std::tie(a.image_id, a.axis, a.original) < std::tie(b.image_id, b.axis, b.original);
    });

    std::vector<AdversarialAxisSummary> out;
    for (Axis axis : {Axis::horizontal, Axis::vertical, Axis::depth}) {
        AdversarialAxisSummary row;
        row.axis = axis;
        double sum_original = 0.0, sum_rel = 0.0, sum_obj = 0.0;
        for (const auto& s : sorted) {
            if (s.axis != axis) continue;
            ++row.n;
            sum_original += s.original;
            sum_rel += s.relation_switch;
            sum_obj += s.object_switch;
        }
        if (row.n == 0) continue;
        const double count = static_cast<double>(row.n);
        row.mean_original = sum_original / count;
        row.mean_relation_switch = sum_rel / count;
        row.mean_object_switch = sum_obj / count;
        row.delta_rel =
            static_cast<float>(row.mean_original) - static_cast<float>(row.mean_relation_switch);
        row.delta_obj =
            static_cast<float>(row.mean_original) - static_cast<float>(row.mean_object_switch);
        row.delta_rel_negative = row.delta_rel < 0.0f;
        row.delta_obj_negative = row.delta_obj < 0.0f;
        out.push_back(std::move(row));
    }
    return out;
}

std::string adversarial_markdown(const std::vector<AdversarialAxisSummary>& rows) {
    std::string out =
        "| Axis | N | Original | Relation switch | Object switch "
        "| \xce\x94_orig.\xe2\x88\x92rel. | \xce\x94_orig.\xe2\x88\x92obj. |\n" +
        divider(7) + "\n";
    for (const auto& row : rows) {
        auto delta_cell = [](float delta, bool negative) {
            // Negative deltas (switched sentence scoring higher) are flagged
            // by bolding.
            const std::string text = format_delta3(delta);
            return negative ? "**" + text + "**" : text;
        };
        out += "| " + std::string(axis_name(row.axis)) + " | " + std::to_string(row.n) + " | " +
               format_fixed3(row.mean_original) + " | " + format_fixed3(row.mean_relation_switch) +
               " | " + format_fixed3(row.mean_object_switch) + " | " +
               delta_cell(row.delta_rel, row.delta_rel_negative) + " | " +
               delta_cell(row.delta_obj, row.delta_obj_negative) + " |\n";
    }
    return out;
}

void write_adversarial_json(const std::vector<AdversarialAxisSummary>& rows,
                            const std::filesystem::path& path) {
    ordered_json j;
    ordered_json out_rows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["axis"] = axis_name(row.axis);
        r["n"] = row.n;
        r["original"] = row.mean_original;
        r["relation_switch"] = row.mean_relation_switch;
        r["object_switch"] = row.mean_object_switch;
        // Stored at display precision so the JSON and the Markdown table
        // carry the same numbers.
        r["delta_rel"] = std::stod(format_delta3(row.delta_rel));
        r["delta_obj"] = std::stod(format_delta3(row.delta_obj));
        r["delta_rel_negative"] = row.delta_rel_negative;
        r["delta_obj_negative"] = row.delta_obj_negative;
        out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    dump_to(j, path);
}

std::size_t caption_word_count(const std::string& caption) {
    std::size_t words = 0;
    std::size_t current = 0;
    for (unsigned char c : caption) {
        if (std::isspace(c)) {
            if (current > 0) ++words;
            current = 0;
        } else if (!std::ispunct(c)) {
            ++current;
        }
    }
    if (current > 0) ++words;
    return words;
}

std::string scene_stats_markdown(const std::vector<SceneStats>& rows) {
    const bool with_captions =
        std::any_of(rows.begin(), rows.end(),
                    [](const SceneStats& r) { return r.mean_caption_words.has_value(); });
    std::string out = "| Scene | Images | Objects | Unique objects |";
    if (with_captions) out += " Caption words |";
    out += " Horizontal | Vertical | Depth |\n";
    out += divider(with_captions ? 8 : 7) + "\n";
    for (const auto& row : rows) {
        out += "| " + row.scene + " | " + std::to_string(row.n_images) + " | " +
               format_fixed3(row.mean_objects) + " | " + format_fixed3(row.mean_unique_objects) +
               " |";
        if (with_captions) {
            out += " " + (row.mean_caption_words ? format_fixed3(*row.mean_caption_words)
                                                 : std::string("n/a")) +
                   " |";
        }
        out += " " + format_fixed3(row.mean_horizontal) + " | " + format_fixed3(row.mean_vertical) +
               " | " + format_fixed3(row.mean_depth) + " |\n";
    }
    return out;
}

void write_scene_stats_json(const std::vector<SceneStats>& rows,
                            const std::filesystem::path& path) {
    ordered_json j;
    ordered_json out_rows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["scene"] = row.scene;
        r["n_images"] = row.n_images;
        r["mean_objects"] = row.mean_objects;
        r["mean_unique_objects"] = row.mean_unique_objects;
        if (row.mean_caption_words) {
            r["mean_caption_words"] = *row.mean_caption_words;
        } else {
            r["mean_caption_words"] = nullptr;
        }
        r["mean_horizontal"] = row.mean_horizontal;
        r["mean_vertical"] = row.mean_vertical;
        r["mean_depth"] = row.mean_depth;
        out_rows.push_back(std::move(r));
    }
    j["scenes"] = std::move(out_rows);
    dump_to(j, path);
}

std::string utc_timestamp() {
    std::time_t now = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        now = std::time(nullptr);
    }
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

std::string make_run_id(const std::string& command,
                        const std::map<std::string, std::string>& config,
                        const std::string& manifest_hash) {
    std::uint64_t h = fnv1a64(command);
    for (const auto& [key, value] : config) {
        h = fnv1a64(key, h);
        h = fnv1a64(value, h);
    }
    h = fnv1a64(manifest_hash, h);
    char digest[24];
    std::snprintf(digest, sizeof(digest), "%016llx", static_cast<unsigned long long>(h));
    return command + "-" + digest;
}

void write_run_record(const RunRecord& record, const std::filesystem::path& path) {
    ordered_json j;
    j["run_id"] = record.run_id;
    j["command"] = record.command;
    j["timestamp"] = record.timestamp;
    if (!record.manifest_hash.empty()) j["manifest_hash"] = record.manifest_hash;
    ordered_json config;
    for (const auto& [key, value] : record.config) config[key] = value;
    j["config"] = std::move(config);
    j["outputs"] = record.outputs;
    dump_to(j, path);
}

}  // namespace depthlang
