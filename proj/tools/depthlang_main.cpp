#include "depthlang/dataset.hpp"
#include "depthlang/error.hpp"
#include "depthlang/masking.hpp"
#include "depthlang/metrics.hpp"
#include "depthlang/object_stats.hpp"
#include "depthlang/png_io.hpp"
#include "depthlang/relations.hpp"
#include "depthlang/report.hpp"
#include "depthlang/sentences.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

namespace fs = std::filesystem;
using namespace depthlang;

namespace {

/// --out if given, else DEPTHLANG_OUT_DIR. The directory is created.
fs::path resolve_out_dir(const std::string& flag_value) {
    std::string dir = flag_value;
    if (dir.empty()) {
        if (const char* env = std::getenv("DEPTHLANG_OUT_DIR"); env && *env) dir = env;
    }
    if (dir.empty()) {
        throw ArgumentError("no output directory: pass --out or set DEPTHLANG_OUT_DIR");
    }
    fs::path path(dir);
    fs::create_directories(path);
    return path;
}

std::vector<ManifestEntry> entries_by_id(const DatasetManifest& manifest) {
    std::vector<ManifestEntry> entries = manifest.entries;
    std::sort(entries.begin(), entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.id < b.id; });
    return entries;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
    return out;
}

template <typename T>
std::string join_values(const std::vector<T>& values, const char* separator) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += separator;
        if constexpr (std::is_same_v<T, std::string>) {
            out += v;
        } else {
            out += std::to_string(v);
        }
    }
    return out;
}

void emit_run_record(const std::string& command, std::map<std::string, std::string> config,
                     const std::string& manifest_hash, std::vector<std::string> outputs,
                     const fs::path& out_dir) {
    RunRecord record;
    record.command = command;
    record.config = std::move(config);
    record.manifest_hash = manifest_hash;
    record.outputs = std::move(outputs);
    record.timestamp = utc_timestamp();
    record.run_id = make_run_id(command, record.config, record.manifest_hash);
    write_run_record(record, out_dir / "run.json");
}

struct GenOptions {
    std::string manifest_path;
    std::string out;
    std::vector<std::string> components{"scene"};
    std::string mode = "stack";
    std::string variant = "canonical";
    int max_relations_per_axis = -1;  // -1 = unlimited
    double lambda = 1.0;
    double max_depth = 10.0;
    bool all_objects = false;
    std::string templates_path;
    std::uint64_t seed = 0;
};

int run_gen_sentences(const GenOptions& opt) {
    const fs::path out_dir = resolve_out_dir(opt.out);
    DatasetManifest manifest = load_manifest(opt.manifest_path);

    TemplateSet templates = TemplateSet::defaults();
    if (!opt.templates_path.empty()) templates.load_scene_templates(opt.templates_path);
    templates.validate();

    CorpusSpec spec;
    for (const auto& name : opt.components) spec.components.push_back(parse_corpus_component(name));
    spec.mode = parse_corpus_mode(opt.mode);
    spec.variant = parse_phrasing_variant(opt.variant);
    if (opt.max_relations_per_axis >= 0) spec.max_relations_per_axis = opt.max_relations_per_axis;
    spec.seed = opt.seed;

    const RelationConfig relation_config{opt.lambda};
    const LoadOptions load_options{opt.max_depth};

    auto corpus_out = open_output(out_dir / "corpus.jsonl");
    auto relations_out = open_output(out_dir / "relations.jsonl");

    std::size_t n_groups = 0, n_relations = 0;
    std::map<std::string, std::size_t> kind_counts;
    for (const auto& entry : entries_by_id(manifest)) {
        const Sample sample = load_sample(manifest, entry, load_options);
        const auto relations = extract_all(sample, relation_config, !opt.all_objects);
        for (const auto& rel : relations) {
            append_relation(relations_out, sample.image_id, rel, sample.segmentation.class_of);
        }
        n_relations += relations.size();
        for (const auto& group : compose_corpus(sample, relations, spec, templates)) {
            append_corpus_group(corpus_out, group);
            ++n_groups;
            for (const auto& record : group.sentences) ++kind_counts[sentence_kind_name(record.kind)];
        }
    }

    std::map<std::string, std::string> config{
        {"manifest", opt.manifest_path},
        {"components", join_values(opt.components, ",")},
        {"mode", opt.mode},
        {"variant", opt.variant},
        {"max_relations_per_axis",
         opt.max_relations_per_axis < 0 ? "unlimited" : std::to_string(opt.max_relations_per_axis)},
        {"lambda", std::to_string(opt.lambda)},
        {"max_depth", std::to_string(opt.max_depth)},
        {"objects", opt.all_objects ? "all" : "unique"},
        {"templates", opt.templates_path.empty() ? "default" : opt.templates_path},
        {"seed", std::to_string(opt.seed)},
    };
    emit_run_record("gen-sentences", std::move(config), hash_file(opt.manifest_path),
                    {"corpus.jsonl", "relations.jsonl"}, out_dir);

    std::cout << "gen-sentences: " << n_groups << " groups over " << manifest.entries.size()
              << " images, " << n_relations << " relations; sentences:";
    for (const auto& [kind, count] : kind_counts) std::cout << " " << kind << "=" << count;
    std::cout << "\n";
    return 0;
}

struct MaskOptions {
    std::string manifest_path;
    std::string out;
    std::string target_class;
    std::string fill = "zero";
    int fill_value = 0;
    bool no_compensation = false;
    double lambda = 1.0;
    double max_depth = 10.0;
};

int run_mask(const MaskOptions& opt) {
    const fs::path out_dir = resolve_out_dir(opt.out);
    DatasetManifest manifest = load_manifest(opt.manifest_path);
    const LoadOptions load_options{opt.max_depth};
    const RelationConfig relation_config{opt.lambda};
    const FillPolicy fill = parse_fill_policy(opt.fill, opt.fill_value);

    std::size_t masked_count = 0;
    for (const auto& entry : entries_by_id(manifest)) {
        const Sample sample = load_sample(manifest, entry, load_options);
        if (!sample.rgb) {
            warn("sample '" + sample.image_id + "' has no rgb image; skipped");
            continue;
        }
        std::vector<std::uint16_t> matching_ids;
        for (const auto& [id, cls] : sample.segmentation.class_of) {
            if (cls == opt.target_class) matching_ids.push_back(id);
        }
        if (matching_ids.empty()) {
            warn("sample '" + sample.image_id + "' has no '" + opt.target_class + "'; skipped");
            continue;
        }
        if (matching_ids.size() > 1) {
            warn("sample '" + sample.image_id + "': class '" + opt.target_class +
                 "' is not unique; skipped");
            continue;
        }

        MaskSpec spec;
        spec.target_instance = matching_ids.front();
        spec.fill = fill;
        spec.compensation = opt.no_compensation ? CompensationPolicy::none
                                                : CompensationPolicy::depth_axis_preferred;

        auto [masked, receipt] = mask_object(sample, spec);
        if (spec.compensation == CompensationPolicy::depth_axis_preferred) {
            const ObjectInstance target =
                compute_object_stats(sample.depth_gt, sample.segmentation, spec.target_instance);
            const auto relations = extract_all(sample, relation_config, /*unique_only=*/true);
            try {
                receipt.compensation_text =
                    compensation_sentence(sample, target, relations, TemplateSet::defaults()).text;
            } catch (const NotFoundError& e) {
                warn(std::string(e.what()) + "; sample skipped");
                continue;
            }
        }

        write_png_rgb8(out_dir / (sample.image_id + ".masked.png"), masked);
        write_mask_receipt(receipt, out_dir / (sample.image_id + ".receipt.json"));
        ++masked_count;
    }
    if (masked_count == 0) {
        throw ValidationError("no sample could be masked with class '" + opt.target_class + "'");
    }

    std::map<std::string, std::string> config{
        {"manifest", opt.manifest_path},
        {"class", opt.target_class},
        {"fill", opt.fill},
        {"fill_value", std::to_string(opt.fill_value)},
        {"compensation", opt.no_compensation ? "none" : "depth_axis_preferred"},
        {"lambda", std::to_string(opt.lambda)},
        {"max_depth", std::to_string(opt.max_depth)},
    };
    emit_run_record("mask", std::move(config), hash_file(opt.manifest_path), {"*.masked.png", "*.receipt.json"},
                    out_dir);

    std::cout << "mask: masked " << masked_count << " of " << manifest.entries.size()
              << " samples (class '" << opt.target_class << "')\n";
    return 0;
}

struct EvalOptions {
    std::string manifest_path;
    std::string pred_dir;
    std::string out;
    double max_depth = 10.0;
    double min_depth = 0.001;
    double delta_base = 1.25;
    std::vector<int> crop;
    bool allow_resize = false;
    bool allow_missing = false;
    std::string label;
};

int run_eval(const EvalOptions& opt) {
    const fs::path out_dir = resolve_out_dir(opt.out);
    DatasetManifest manifest = load_manifest(opt.manifest_path);

    EvalConfig cfg;
    cfg.max_depth = opt.max_depth;
    cfg.min_depth = opt.min_depth;
    cfg.delta_base = opt.delta_base;
    cfg.allow_resize = opt.allow_resize;
    if (!opt.crop.empty()) {
        if (opt.crop.size() != 4) {
            throw ArgumentError("--crop expects top,left,bottom,right");
        }
        cfg.crop = CropRect{opt.crop[0], opt.crop[1], opt.crop[2], opt.crop[3]};
    }
    cfg.validate();

    const fs::path pred_root(opt.pred_dir);
    auto pred_path_for = [&pred_root](const std::string& id) -> std::optional<fs::path> {
        for (const char* ext : {".png", ".dgrd"}) {
            fs::path candidate = pred_root / (id + ext);
            if (fs::exists(candidate)) return candidate;
        }
        return std::nullopt;
    };

    const auto entries = entries_by_id(manifest);
    std::vector<std::string> missing;
    for (const auto& entry : entries) {
        if (!pred_path_for(entry.id)) missing.push_back(entry.id);
    }
    if (!missing.empty() && !opt.allow_missing) {
        throw ValidationError("missing predictions for " + std::to_string(missing.size()) +
                              " images (first: '" + missing.front() +
                              "'); pass --allow-missing to skip them");
    }

    std::map<std::string, PixelMetrics> per_image;
    std::vector<std::string> excluded;
    for (const auto& entry : entries) {
        const auto pred_path = pred_path_for(entry.id);
        if (!pred_path) {
            warn("no prediction for '" + entry.id + "'; skipped");
            continue;
        }
        const DepthGrid gt = read_depth_file(manifest.resolve(entry.depth));
        const DepthGrid pred = read_depth_file(*pred_path);
        try {
            per_image[entry.id] = pixel_metrics(pred, gt, cfg);
        } catch (const DegenerateError&) {
            warn("image '" + entry.id + "' has no jointly valid pixels; excluded");
            excluded.push_back(entry.id);
        }
    }
    if (per_image.empty()) {
        throw ValidationError("no image produced metrics; nothing to aggregate");
    }
    const MetricReport report = aggregate_metrics(per_image, cfg, excluded);

    const std::string label = opt.label.empty() ? manifest.dataset : opt.label;
    const std::string table = metrics_markdown({{label, report.aggregate}});
    write_metric_report(report, out_dir / "report.json");
    open_output(out_dir / "report.md") << table;

    std::map<std::string, std::string> config{
        {"manifest", opt.manifest_path},
        {"pred_dir", opt.pred_dir},
        {"max_depth", std::to_string(opt.max_depth)},
        {"min_depth", std::to_string(opt.min_depth)},
        {"delta_base", std::to_string(opt.delta_base)},
        {"crop", opt.crop.empty() ? "none" : join_values(opt.crop, ",")},
        {"allow_resize", opt.allow_resize ? "true" : "false"},
        {"allow_missing", opt.allow_missing ? "true" : "false"},
    };
    emit_run_record("eval", std::move(config), hash_file(opt.manifest_path),
                    {"report.json", "report.md"}, out_dir);

    std::cout << table;
    std::cout << "eval: " << report.n_images << " images";
    if (!report.excluded.empty()) std::cout << ", " << report.excluded.size() << " excluded";
    if (!missing.empty()) std::cout << ", " << missing.size() << " missing";
    std::cout << "\n";
    return 0;
}

struct CompareOptions {
    std::string report_a;
    std::string report_b;
    std::string out;
    std::string label_a = "A";
    std::string label_b = "B";
    bool intersect = false;
};

int run_compare(const CompareOptions& opt) {
    const fs::path out_dir = resolve_out_dir(opt.out);
    const MetricReport a = read_metric_report(opt.report_a);
    const MetricReport b = read_metric_report(opt.report_b);
    const ComparisonReport cmp = compare_reports(a, b, opt.intersect);

    const std::string table = comparison_markdown(cmp, opt.label_a, opt.label_b);
    write_comparison_json(cmp, opt.label_a, opt.label_b, out_dir / "compare.json");
    open_output(out_dir / "compare.md") << table;

    std::map<std::string, std::string> config{
        {"report_a", opt.report_a},
        {"report_b", opt.report_b},
        {"label_a", opt.label_a},
        {"label_b", opt.label_b},
        {"intersect", opt.intersect ? "true" : "false"},
    };
    emit_run_record("compare", std::move(config), "", {"compare.json", "compare.md"}, out_dir);

    std::cout << table;
    return 0;
}

struct StatsOptions {
    std::string manifest_path;
    std::string out;
    double lambda = 1.0;
    double max_depth = 10.0;
};

int run_stats(const StatsOptions& opt) {
    const fs::path out_dir = resolve_out_dir(opt.out);
    DatasetManifest manifest = load_manifest(opt.manifest_path);
    const LoadOptions load_options{opt.max_depth};
    const RelationConfig relation_config{opt.lambda};

    struct Accumulator {
        std::size_t n_images = 0;
        std::size_t objects = 0;
        std::size_t unique_objects = 0;
        double caption_words = 0.0;
        std::size_t captioned_images = 0;
        std::size_t horizontal = 0;
        std::size_t vertical = 0;
        std::size_t depth = 0;
    };
    std::map<std::string, Accumulator> by_scene;

    for (const auto& entry : entries_by_id(manifest)) {
        const Sample sample = load_sample(manifest, entry, load_options);
        Accumulator& acc = by_scene[sample.scene_label];
        ++acc.n_images;
        for (const auto& [cls, count] : class_census(sample.segmentation)) {
            acc.objects += static_cast<std::size_t>(count);
            if (count == 1) ++acc.unique_objects;
        }
        if (!sample.captions.empty()) {
            double words = 0.0;
            for (const auto& caption : sample.captions) {
                words += static_cast<double>(caption_word_count(caption));
            }
            acc.caption_words += words / static_cast<double>(sample.captions.size());
            ++acc.captioned_images;
        }
        // Fig. 6-style relation counts run in all-objects mode.
        for (const auto& rel : extract_all(sample, relation_config, /*unique_only=*/false)) {
            switch (rel.axis) {
                case Axis::horizontal: ++acc.horizontal; break;
                case Axis::vertical: ++acc.vertical; break;
                case Axis::depth: ++acc.depth; break;
            }
        }
    }

    std::vector<SceneStats> rows;
    for (const auto& [scene, acc] : by_scene) {
        SceneStats row;
        row.scene = scene;
        row.n_images = acc.n_images;
        const double n = static_cast<double>(acc.n_images);
        row.mean_objects = static_cast<double>(acc.objects) / n;
        row.mean_unique_objects = static_cast<double>(acc.unique_objects) / n;
        if (acc.captioned_images > 0) {
            row.mean_caption_words = acc.caption_words / static_cast<double>(acc.captioned_images);
        }
        row.mean_horizontal = static_cast<double>(acc.horizontal) / n;
        row.mean_vertical = static_cast<double>(acc.vertical) / n;
        row.mean_depth = static_cast<double>(acc.depth) / n;
        rows.push_back(std::move(row));
    }

    const std::string table = scene_stats_markdown(rows);
    write_scene_stats_json(rows, out_dir / "stats.json");
    open_output(out_dir / "stats.md") << table;

    std::map<std::string, std::string> config{
        {"manifest", opt.manifest_path},
        {"lambda", std::to_string(opt.lambda)},
        {"max_depth", std::to_string(opt.max_depth)},
    };
    emit_run_record("stats", std::move(config), hash_file(opt.manifest_path),
                    {"stats.json", "stats.md"}, out_dir);

    std::cout << table;
    return 0;
}

struct AdversarialOptions {
    std::string manifest_path;
    std::string triplets_path;
    std::string scores_path;
    std::string out;
    double lambda = 1.0;
    double max_depth = 10.0;
};

int run_adversarial(const AdversarialOptions& opt) {
    const fs::path out_dir = resolve_out_dir(opt.out);
    if (!opt.scores_path.empty()) {
        if (opt.triplets_path.empty()) {
            throw ArgumentError("--scores requires --triplets");
        }
        const auto triplets = read_triplets_jsonl(opt.triplets_path);
        const auto scores = read_scores_csv(opt.scores_path);
        const auto summary = summarize_adversarial(triplets, scores);
        const std::string table = adversarial_markdown(summary);
        write_adversarial_json(summary, out_dir / "adversarial.json");
        open_output(out_dir / "adversarial.md") << table;

        std::map<std::string, std::string> config{
            {"triplets", opt.triplets_path},
            {"scores", opt.scores_path},
        };
        emit_run_record("adversarial", std::move(config), "",
                        {"adversarial.json", "adversarial.md"}, out_dir);
        std::cout << table;
        return 0;
    }

    if (opt.manifest_path.empty()) {
        throw ArgumentError("adversarial needs either --manifest (generate triplets) or "
                            "--triplets with --scores (summarize)");
    }
    DatasetManifest manifest = load_manifest(opt.manifest_path);
    const LoadOptions load_options{opt.max_depth};
    const RelationConfig relation_config{opt.lambda};
    const TemplateSet templates = TemplateSet::defaults();

    auto triplets_out = open_output(out_dir / "triplets.jsonl");
    std::size_t n_triplets = 0;
    for (const auto& entry : entries_by_id(manifest)) {
        const Sample sample = load_sample(manifest, entry, load_options);
        for (const auto& rel : extract_all(sample, relation_config, /*unique_only=*/true)) {
            // Each unordered pair appears once; the reverse ordering only
            // reproduces this triplet's object switch.
            if (rel.subject > rel.object) continue;
            append_triplet(triplets_out, sample.image_id,
                           adversarial_variants(rel, sample.segmentation.class_of, templates));
            ++n_triplets;
        }
    }

    std::map<std::string, std::string> config{
        {"manifest", opt.manifest_path},
        {"lambda", std::to_string(opt.lambda)},
        {"max_depth", std::to_string(opt.max_depth)},
    };
    emit_run_record("adversarial", std::move(config), hash_file(opt.manifest_path),
                    {"triplets.jsonl"}, out_dir);
    std::cout << "adversarial: " << n_triplets << " triplets\n";
    return 0;
}

struct SubsetOptions {
    std::string manifest_path;
    std::string out_manifest;
    std::string split_file;
    std::string train_out;
    std::string test_out;
    double lambda = 1.0;
    double max_depth = 10.0;
    bool all_objects = false;
};

int run_subset(const SubsetOptions& opt) {
    DatasetManifest manifest = load_manifest(opt.manifest_path);
    const bool filter_mode = !opt.out_manifest.empty();
    const bool split_mode = !opt.split_file.empty();
    if (filter_mode == split_mode) {
        throw ArgumentError("subset needs exactly one of --out-manifest (relation-complete "
                            "filter) or --split-file with --train-out/--test-out");
    }

    if (filter_mode) {
        const DatasetManifest kept = select_relation_complete_subset(
            manifest, opt.lambda, !opt.all_objects, LoadOptions{opt.max_depth});
        save_manifest(kept, opt.out_manifest);
        std::cout << "subset: kept " << kept.entries.size() << " of " << manifest.entries.size()
                  << " entries\n";
        return 0;
    }

    if (opt.train_out.empty() || opt.test_out.empty()) {
        throw ArgumentError("--split-file requires --train-out and --test-out");
    }
    std::ifstream in(opt.split_file);
    if (!in) throw FormatError("cannot open split file '" + opt.split_file + "'");
    nlohmann::json split;
    try {
        split = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("split file '" + opt.split_file + "': " + e.what());
    }
    std::set<std::string> train_scenes, test_scenes;
    try {
        for (const auto& s : split.at("train")) train_scenes.insert(s.get<std::string>());
        for (const auto& s : split.at("test")) test_scenes.insert(s.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("split file '" + opt.split_file +
                          "': expected {\"train\": [...], \"test\": [...]}: " + e.what());
    }

    const PartitionResult parts = partition_by_scene(manifest, train_scenes, test_scenes);
    save_manifest(parts.train, opt.train_out);
    save_manifest(parts.test, opt.test_out);
    std::cout << "subset: train " << parts.train.entries.size() << " / test "
              << parts.test.entries.size() << " / dropped " << parts.dropped << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial-language toolkit for depth datasets: relation extraction, sentence "
                 "corpora, masking perturbations, and depth-metric reports."};
    app.require_subcommand(1);
    app.fallthrough();  // lets --config appear after the subcommand name
    app.set_config("--config", "", "TOML config file; command-line flags override its values");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-sentences",
                                       "Generate the sentence corpus and relation list");
    gen_cmd->configurable();
    gen_cmd->add_option("--manifest", gen.manifest_path, "Dataset manifest JSON")->required();
    gen_cmd->add_option("--out", gen.out, "Output directory");
    gen_cmd->add_option("--components", gen.components,
                        "Comma list of scene, caption, depth_relations, horizontal_relations, "
                        "vertical_relations, activity")
        ->delimiter(',');
    gen_cmd->add_option("--mode", gen.mode, "stack or per_template");
    gen_cmd->add_option("--variant", gen.variant, "canonical, all, or seeded_random");
    gen_cmd->add_option("--max-relations-per-axis", gen.max_relations_per_axis,
                        "Cap per axis (default unlimited)");
    gen_cmd->add_option("--lambda", gen.lambda, "Overlap-control factor");
    gen_cmd->add_option("--max-depth", gen.max_depth, "Ground-truth validity ceiling in meters");
    gen_cmd->add_flag("--all-objects", gen.all_objects,
                      "Extract relations between all objects, not only unique-class ones");
    gen_cmd->add_option("--templates", gen.templates_path, "Scene template file, one per line");
    gen_cmd->add_option("--seed", gen.seed, "Seed for all sampling");

    MaskOptions mask;
    auto* mask_cmd = app.add_subcommand("mask", "Mask a unique object and emit receipts");
    mask_cmd->configurable();
    mask_cmd->add_option("--manifest", mask.manifest_path, "Dataset manifest JSON")->required();
    mask_cmd->add_option("--out", mask.out, "Output directory");
    mask_cmd->add_option("--class", mask.target_class, "Class name to mask")->required();
    mask_cmd->add_option("--fill", mask.fill, "zero, mean_rgb, or constant");
    mask_cmd->add_option("--fill-value", mask.fill_value, "Fill value for --fill constant");
    mask_cmd->add_flag("--no-compensation", mask.no_compensation,
                       "Skip the compensation sentence");
    mask_cmd->add_option("--lambda", mask.lambda, "Overlap-control factor");
    mask_cmd->add_option("--max-depth", mask.max_depth, "Ground-truth validity ceiling in meters");

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Score predicted depth maps against ground truth");
    eval_cmd->configurable();
    eval_cmd->add_option("--manifest", eval.manifest_path, "Dataset manifest JSON")->required();
    eval_cmd->add_option("--pred-dir", eval.pred_dir,
                         "Directory of predictions named <image_id>.png or <image_id>.dgrd")
        ->required();
    eval_cmd->add_option("--out", eval.out, "Output directory");
    eval_cmd->add_option("--max-depth", eval.max_depth, "Validity/clamp ceiling in meters");
    eval_cmd->add_option("--min-depth", eval.min_depth, "Prediction clamp floor in meters");
    eval_cmd->add_option("--delta-base", eval.delta_base, "Inlier threshold base");
    eval_cmd->add_option("--crop", eval.crop, "Evaluation crop top,left,bottom,right")
        ->delimiter(',');
    eval_cmd->add_flag("--allow-resize", eval.allow_resize,
                       "Nearest-neighbor resize predictions to the gt resolution");
    eval_cmd->add_flag("--allow-missing", eval.allow_missing, "Skip images without predictions");
    eval_cmd->add_option("--label", eval.label, "Row label in the Markdown table");

    CompareOptions compare;
    auto* compare_cmd = app.add_subcommand("compare", "Delta table between two metric reports");
    compare_cmd->configurable();
    compare_cmd->add_option("--report-a", compare.report_a, "Baseline report JSON")->required();
    compare_cmd->add_option("--report-b", compare.report_b, "Comparison report JSON")->required();
    compare_cmd->add_option("--out", compare.out, "Output directory");
    compare_cmd->add_option("--label-a", compare.label_a, "Baseline label");
    compare_cmd->add_option("--label-b", compare.label_b, "Comparison label");
    compare_cmd->add_flag("--intersect", compare.intersect,
                          "Compare the common image subset when id sets differ");

    StatsOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "Per-scene dataset statistics");
    stats_cmd->configurable();
    stats_cmd->add_option("--manifest", stats.manifest_path, "Dataset manifest JSON")->required();
    stats_cmd->add_option("--out", stats.out, "Output directory");
    stats_cmd->add_option("--lambda", stats.lambda, "Overlap-control factor");
    stats_cmd->add_option("--max-depth", stats.max_depth,
                          "Ground-truth validity ceiling in meters");

    AdversarialOptions adversarial;
    auto* adv_cmd = app.add_subcommand(
        "adversarial", "Generate sentence triplets, or summarize externally scored ones");
    adv_cmd->configurable();
    adv_cmd->add_option("--manifest", adversarial.manifest_path,
                        "Dataset manifest JSON (generation mode)");
    adv_cmd->add_option("--triplets", adversarial.triplets_path,
                        "Triplets JSONL (summary mode)");
    adv_cmd->add_option("--scores", adversarial.scores_path,
                        "CSV of external scores: image_id,axis,original,relation_switch,object_switch");
    adv_cmd->add_option("--out", adversarial.out, "Output directory");
    adv_cmd->add_option("--lambda", adversarial.lambda, "Overlap-control factor");
    adv_cmd->add_option("--max-depth", adversarial.max_depth,
                        "Ground-truth validity ceiling in meters");

    SubsetOptions subset;
    auto* subset_cmd = app.add_subcommand(
        "subset", "Relation-complete filtering or scene-based train/test partition");
    subset_cmd->configurable();
    subset_cmd->add_option("--manifest", subset.manifest_path, "Dataset manifest JSON")
        ->required();
    subset_cmd->add_option("--out-manifest", subset.out_manifest,
                           "Write the relation-complete subset manifest here");
    subset_cmd->add_option("--split-file", subset.split_file,
                           "JSON {\"train\": [scenes], \"test\": [scenes]}");
    subset_cmd->add_option("--train-out", subset.train_out, "Train manifest output path");
    subset_cmd->add_option("--test-out", subset.test_out, "Test manifest output path");
    subset_cmd->add_option("--lambda", subset.lambda, "Overlap-control factor");
    subset_cmd->add_option("--max-depth", subset.max_depth,
                           "Ground-truth validity ceiling in meters");
    subset_cmd->add_flag("--all-objects", subset.all_objects,
                         "Relation-completeness over all objects, not only unique-class ones");

    try {
        app.parse(argc, argv);
        if (gen_cmd->parsed()) return run_gen_sentences(gen);
        if (mask_cmd->parsed()) return run_mask(mask);
        if (eval_cmd->parsed()) return run_eval(eval);
        if (compare_cmd->parsed()) return run_compare(compare);
        if (stats_cmd->parsed()) return run_stats(stats);
        if (adv_cmd->parsed()) return run_adversarial(adversarial);
        if (subset_cmd->parsed()) return run_subset(subset);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        nlohmann::ordered_json j{{"error", "usage"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        nlohmann::ordered_json j{{"error", e.kind()}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        const std::string kind = e.kind();
        return (kind == "argument" || kind == "config") ? 2 : 1;
    } catch (const std::exception& e) {
        nlohmann::ordered_json j{{"error", "internal"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 1;
    }
}
