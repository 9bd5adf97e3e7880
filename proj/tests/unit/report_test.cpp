#include "depthlang/error.hpp"
#include "depthlang/report.hpp"
#include "fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace depthlang;
using namespace depthlang::testing;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_SUITE_BEGIN("reporting");

TEST_CASE("fixed-point formatting") {
    CHECK(format_fixed3(0.252) == "0.252");
    CHECK(format_fixed3(2.0 / 3.0) == "0.667");
    CHECK(format_fixed3(-0.5) == "-0.500");
    CHECK(format_fixed3(1.0) == "1.000");
    CHECK(format_signed3(0.027) == "+0.027");
    CHECK(format_signed3(-0.006) == "-0.006");
    CHECK(format_signed3(0.0) == "+0.000");
}

TEST_CASE("delta formatting truncates toward zero at three decimals") {
    CHECK(format_delta3(0.009998321f) == "0.009");
    CHECK(format_delta3(-0.0240001678f) == "-0.024");
    CHECK(format_delta3(0.0f) == "0.000");
    CHECK(format_delta3(1.2349f) == "1.234");
    CHECK(format_delta3(-0.0004f) == "-0.000");
    CHECK(format_delta3(0.0250f) == "0.025");
}

TEST_CASE("metric table header and cells are fixed") {
    MetricRow row;
    row.label = "Scene-Level";
    row.values = six_metrics_from_array({0.962, 0.994, 0.999, 0.252, 0.068, 0.029});
    const std::string table = metrics_markdown({row});

    CHECK(table.find("| Setting | δ1↑ | δ2↑ | δ3↑ | RMSE↓ | "
                     "Abs.REL↓ | Log10↓ |") != std::string::npos);
    CHECK(table.find("0.962 | 0.994 | 0.999 | 0.252 | 0.068 | 0.029") != std::string::npos);
    CHECK(table.find("| Scene-Level |") != std::string::npos);
}

TEST_CASE("comparison markdown carries deltas and percents") {
    PixelMetrics a, b;
    a.values = six_metrics_from_array({0.962, 0.994, 0.999, 0.382, 0.068, 0.029});
    b.values = six_metrics_from_array({0.956, 0.994, 0.999, 0.424, 0.073, 0.031});
    const ComparisonReport cmp = compare_reports(aggregate_metrics({{"x", a}}, {}),
                                                 aggregate_metrics({{"x", b}}, {}));

    const std::string md = comparison_markdown(cmp, "baseline", "masked");
    CHECK(md.find("| baseline |") != std::string::npos);
    CHECK(md.find("| masked |") != std::string::npos);
    CHECK(md.find("+0.042") != std::string::npos);   // rmse delta
    CHECK(md.find("+11.0%") != std::string::npos);   // rmse percent
    CHECK(md.find("-0.006") != std::string::npos);   // delta1 drop
}

TEST_CASE("comparison json mirrors the markdown numbers") {
    TempDir dir;
    PixelMetrics a, b;
    a.values = six_metrics_from_array({1, 1, 1, 0.5, 0.1, 0.05});
    b.values = six_metrics_from_array({1, 1, 1, 0.25, 0.1, 0.05});
    const ComparisonReport cmp = compare_reports(aggregate_metrics({{"x", a}}, {}),
                                                 aggregate_metrics({{"x", b}}, {}));
    write_comparison_json(cmp, "a", "b", dir / "cmp.json");

    const auto j = nlohmann::json::parse(read_bytes(dir / "cmp.json"));
    CHECK(j.at("label_a") == "a");
    CHECK(j.at("delta").at("rmse").get<double>() == doctest::Approx(-0.25));
    CHECK(j.at("percent").at("rmse").get<double>() == doctest::Approx(-50.0));
    CHECK(j.at("n_images") == 1);
}

TEST_CASE("corpus jsonl schema: spatial records carry relation fields") {
    CorpusGroup group;
    group.image_id = "img1";
    group.mode = CorpusMode::stack;
    group.aggregate = "mean_block";

    SentenceRecord scene;
    scene.image_id = "img1";
    scene.kind = SentenceKind::scene;
    scene.text = "a photo of a kitchen";
    scene.template_id = 0;
    group.sentences.push_back(scene);

    SentenceRecord spatial;
    spatial.image_id = "img1";
    spatial.kind = SentenceKind::spatial;
    spatial.text = "A knife is in front of a refrigerator";
    spatial.relation = SpatialRelation{1, 2, Axis::depth, Direction::front};
    spatial.subject_class = "knife";
    spatial.object_class = "refrigerator";
    group.sentences.push_back(spatial);

    std::ostringstream out;
    append_corpus_group(out, group);
    const std::string line = out.str();
    CHECK(line.back() == '\n');
    CHECK(line.find('\n') == line.size() - 1);  // one compact line

    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("image_id") == "img1");
    CHECK(j.at("mode") == "stack");
    CHECK(j.at("aggregate") == "mean_block");
    REQUIRE(j.at("sentences").size() == 2);
    const auto& js = j.at("sentences").at(1);
    CHECK(js.at("kind") == "spatial");
    CHECK(js.at("axis") == "depth");
    CHECK(js.at("direction") == "front");
    CHECK(js.at("subject") == "knife");
    CHECK(js.at("object") == "refrigerator");
    const auto& jscene = j.at("sentences").at(0);
    CHECK(jscene.at("kind") == "scene");
    CHECK_FALSE(jscene.contains("axis"));
    CHECK_FALSE(jscene.contains("subject"));
}

TEST_CASE("relation jsonl names both endpoints") {
    std::ostringstream out;
    append_relation(out, "img1", {1, 2, Axis::horizontal, Direction::left},
                    {{1, "knife"}, {2, "refrigerator"}});
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j.at("image_id") == "img1");
    CHECK(j.at("subject_id") == 1);
    CHECK(j.at("subject_class") == "knife");
    CHECK(j.at("object_id") == 2);
    CHECK(j.at("object_class") == "refrigerator");
    CHECK(j.at("axis") == "horizontal");
    CHECK(j.at("direction") == "left");
}

TEST_CASE("triplet jsonl round trip") {
    TempDir dir;
    AdversarialTriplet t;
    t.axis = Axis::depth;
    t.original = "A knife is in front of a refrigerator";
    t.relation_switch = "A knife is behind a refrigerator";
    t.object_switch = "A refrigerator is in front of a knife";
    {
        std::ofstream out(dir / "triplets.jsonl", std::ios::binary);
        append_triplet(out, "img1", t);
        t.axis = Axis::horizontal;
        t.original = "A knife is to the left of a refrigerator";
        append_triplet(out, "img2", t);
    }
    const auto rows = read_triplets_jsonl(dir / "triplets.jsonl");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].image_id == "img1");
    CHECK(rows[0].axis == Axis::depth);
    CHECK(rows[0].original == "A knife is in front of a refrigerator");
    CHECK(rows[0].relation_switch == "A knife is behind a refrigerator");
    CHECK(rows[0].object_switch == "A refrigerator is in front of a knife");
    CHECK(rows[1].axis == Axis::horizontal);
}

TEST_CASE("mask receipt json") {
    TempDir dir;
    MaskReceipt receipt;
    receipt.image_id = "img1";
    receipt.target_id = 4;
    receipt.target_class = "plant";
    receipt.pixels_masked = 17;
    receipt.bbox = {2, 3, 5, 9};
    receipt.compensation_text = "A plant is behind a knife";
    write_mask_receipt(receipt, dir / "r.json");

    const auto j = nlohmann::json::parse(read_bytes(dir / "r.json"));
    CHECK(j.at("image_id") == "img1");
    CHECK(j.at("target_id") == 4);
    CHECK(j.at("target_class") == "plant");
    CHECK(j.at("pixels_masked") == 17);
    CHECK(j.at("bbox") == nlohmann::json::array({2, 3, 5, 9}));
    CHECK(j.at("compensation_text") == "A plant is behind a knife");
}

TEST_CASE("scores csv parsing and validation") {
    TempDir dir;
    write_text(dir / "scores.csv",
               "image_id,axis,original,relation_switch,object_switch\n"
               "img1,depth,25.7,25.6,25.9\n"
               "img2,horizontal,24.0,23.5,23.9\n");
    const auto scores = read_scores_csv(dir / "scores.csv");
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].image_id == "img1");
    CHECK(scores[0].axis == Axis::depth);
    CHECK(scores[0].original == 25.7);
    CHECK(scores[1].object_switch == 23.9);

    write_text(dir / "bad_header.csv", "id,axis,a,b,c\nimg1,depth,1,2,3\n");
    CHECK_THROWS_AS(read_scores_csv(dir / "bad_header.csv"), FormatError);
    write_text(dir / "bad_value.csv",
               "image_id,axis,original,relation_switch,object_switch\nimg1,depth,x,2,3\n");
    CHECK_THROWS_AS(read_scores_csv(dir / "bad_value.csv"), FormatError);
    write_text(dir / "short_row.csv",
               "image_id,axis,original,relation_switch,object_switch\nimg1,depth,1,2\n");
    CHECK_THROWS_AS(read_scores_csv(dir / "short_row.csv"), FormatError);
}

TEST_CASE("adversarial summary reproduces the truncated-delta fixture") {
    // Three depth triplets whose score means are 25.675 / 25.665 / 25.699:
    // the original-vs-object-switch delta is negative, flagging that masking
    // the named object helps rather than hurts.
    std::vector<TripletRow> triplets;
    std::vector<ScoredTriplet> scores;
    const double originals[3] = {25.675, 25.675, 25.675};
    const double rel_switch[3] = {25.665, 25.665, 25.665};
    const double obj_switch[3] = {25.699, 25.699, 25.699};
    for (int i = 0; i < 3; ++i) {
        TripletRow t;
        t.image_id = "img" + std::to_string(i);
        t.axis = Axis::depth;
        triplets.push_back(t);
        ScoredTriplet s;
        s.image_id = t.image_id;
        s.axis = Axis::depth;
        s.original = originals[i];
        s.relation_switch = rel_switch[i];
        s.object_switch = obj_switch[i];
        scores.push_back(s);
    }

    const auto rows = summarize_adversarial(triplets, scores);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].axis == Axis::depth);
    CHECK(rows[0].n == 3);
    CHECK(format_fixed3(rows[0].mean_original) == "25.675");
    CHECK(format_delta3(rows[0].delta_rel) == "0.009");
    CHECK(format_delta3(rows[0].delta_obj) == "-0.024");
    CHECK_FALSE(rows[0].delta_rel_negative);
    CHECK(rows[0].delta_obj_negative);

    const std::string md = adversarial_markdown(rows);
    CHECK(md.find("25.675") != std::string::npos);
    CHECK(md.find("0.009") != std::string::npos);
    CHECK(md.find("**-0.024**") != std::string::npos);  // negative deltas are bolded

    TempDir dir;
    write_adversarial_json(rows, dir / "adv.json");
    const auto j = nlohmann::json::parse(read_bytes(dir / "adv.json"));
    const auto& row = j.at("rows").at(0);
    CHECK(row.at("axis") == "depth");
    CHECK(row.at("delta_rel").get<double>() == 0.009);
    CHECK(row.at("delta_obj").get<double>() == -0.024);
    CHECK(row.at("delta_obj_negative") == true);
}

TEST_CASE("adversarial summary groups by axis and checks the pairing") {
    std::vector<TripletRow> triplets;
    std::vector<ScoredTriplet> scores;
    auto add = [&](const std::string& id, Axis axis, double o, double r, double s) {
        TripletRow t;
        t.image_id = id;
        t.axis = axis;
        triplets.push_back(t);
        ScoredTriplet row;
        row.image_id = id;
        row.axis = axis;
        row.original = o;
        row.relation_switch = r;
        row.object_switch = s;
        scores.push_back(row);
    };
    add("a", Axis::horizontal, 10.0, 8.0, 9.0);
    add("a", Axis::depth, 20.0, 16.0, 18.0);
    add("b", Axis::horizontal, 30.0, 28.0, 29.0);

    const auto rows = summarize_adversarial(triplets, scores);
    REQUIRE(rows.size() == 2);  // horizontal first, then depth; empty axes skipped
    CHECK(rows[0].axis == Axis::horizontal);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].mean_original == 20.0);
    CHECK(rows[0].delta_rel == 2.0f);
    CHECK(rows[1].axis == Axis::depth);
    CHECK(rows[1].n == 1);

    scores.pop_back();  // triplet without a score row
    CHECK_THROWS_AS(summarize_adversarial(triplets, scores), ValidationError);

    ScoredTriplet restored;
    restored.image_id = "b";
    restored.axis = Axis::horizontal;
    scores.push_back(restored);
    ScoredTriplet orphan;
    orphan.image_id = "c";
    orphan.axis = Axis::vertical;
    scores.push_back(orphan);  // score row without a triplet
    CHECK_THROWS_AS(summarize_adversarial(triplets, scores), ValidationError);
}

TEST_CASE("caption word counting drops punctuation") {
    CHECK(caption_word_count("A bed in a room.") == 5);
    CHECK(caption_word_count("") == 0);
    CHECK(caption_word_count("   ") == 0);
    CHECK(caption_word_count("--") == 0);
    CHECK(caption_word_count("don't stop") == 2);
    CHECK(caption_word_count("two  spaces\tand\nnewlines") == 4);
}

TEST_CASE("scene stats table with and without captions") {
    SceneStats kitchen;
    kitchen.scene = "kitchen";
    kitchen.n_images = 2;
    kitchen.mean_objects = 4.0;
    kitchen.mean_unique_objects = 3.5;
    kitchen.mean_caption_words = 8.5;
    kitchen.mean_horizontal = 6.0;
    kitchen.mean_vertical = 2.0;
    kitchen.mean_depth = 5.0;

    std::string md = scene_stats_markdown({kitchen});
    CHECK(md.find("| kitchen |") != std::string::npos);
    CHECK(md.find("8.5") != std::string::npos);

    // A caption-less scene shows n/a while any other scene has captions; once
    // no scene has them the column disappears entirely.
    SceneStats office = kitchen;
    office.scene = "office";
    office.mean_caption_words.reset();
    md = scene_stats_markdown({kitchen, office});
    CHECK(md.find("Caption words") != std::string::npos);
    CHECK(md.find("n/a") != std::string::npos);

    kitchen.mean_caption_words.reset();
    md = scene_stats_markdown({kitchen});
    CHECK(md.find("Caption words") == std::string::npos);
    CHECK(md.find("n/a") == std::string::npos);

    TempDir dir;
    write_scene_stats_json({kitchen}, dir / "stats.json");
    const auto j = nlohmann::json::parse(read_bytes(dir / "stats.json"));
    const auto& row = j.at("scenes").at(0);
    CHECK(row.at("scene") == "kitchen");
    CHECK(row.at("n_images") == 2);
    CHECK(row.at("mean_caption_words").is_null());
}

TEST_CASE("run records: reproducible timestamps and stable ids") {
    TempDir dir;
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    CHECK(utc_timestamp() == "1970-01-01T00:00:00Z");
    setenv("SOURCE_DATE_EPOCH", "1755129600", 1);
    CHECK(utc_timestamp() == "2025-08-14T00:00:00Z");
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(utc_timestamp().size() == 20);  // YYYY-MM-DDTHH:MM:SSZ

    const std::map<std::string, std::string> config = {{"seed", "42"}, {"variant", "canonical"}};
    const std::string id = make_run_id("gen-sentences", config, "abc123");
    CHECK(id == make_run_id("gen-sentences", config, "abc123"));
    CHECK(id != make_run_id("gen-sentences", config, "abc124"));
    CHECK(id.rfind("gen-sentences-", 0) == 0);

    RunRecord record;
    record.run_id = id;
    record.command = "gen-sentences";
    record.config = config;
    record.manifest_hash = "abc123";
    record.outputs = {"corpus.jsonl"};
    record.timestamp = "1970-01-01T00:00:00Z";
    write_run_record(record, dir / "run.json");
    const auto j = nlohmann::json::parse(read_bytes(dir / "run.json"));
    CHECK(j.at("run_id") == id);
    CHECK(j.at("config").at("seed") == "42");
    CHECK(j.at("outputs") == nlohmann::json::array({"corpus.jsonl"}));
}

TEST_CASE("corpus mode names") {
    CHECK(std::string(corpus_mode_name(CorpusMode::stack)) == "stack");
    CHECK(parse_corpus_mode("per_template") == CorpusMode::per_template);
    CHECK_THROWS_AS(parse_corpus_mode("stacked"), ArgumentError);
}

TEST_SUITE_END();
