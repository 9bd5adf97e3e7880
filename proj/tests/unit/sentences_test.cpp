#include "depthlang/error.hpp"
#include "depthlang/sentences.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>

using namespace depthlang;
using namespace depthlang::testing;

namespace {

const std::map<std::uint16_t, std::string> kKitchenClasses = {{1, "knife"}, {2, "refrigerator"}};

SpatialRelation rel(std::uint16_t s, std::uint16_t o, Direction d) {
    return {s, o, axis_of(d), d};
}

std::vector<std::string> texts(const std::vector<SentenceRecord>& records) {
    std::vector<std::string> out;
    for (const auto& r : records) out.push_back(r.text);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("sentence_gen");

TEST_CASE("scene sentences fill the class slot with the lowercased label") {
    const TemplateSet templates = TemplateSet::defaults();
    const auto records = scene_sentences("img1", "Bedroom", templates);
    REQUIRE(records.size() == 1);
    CHECK(records[0].text == "a photo of a bedroom");
    CHECK(records[0].kind == SentenceKind::scene);
    CHECK(records[0].template_id == 0);
    CHECK_FALSE(records[0].relation.has_value());

    CHECK_THROWS_AS(scene_sentences("img1", "", templates), ArgumentError);
}

TEST_CASE("scene sentences scale to a large template bank in order") {
    TemplateSet templates = TemplateSet::defaults();
    templates.scene_templates.clear();
    for (int i = 0; i < 80; ++i) {
        templates.scene_templates.push_back("variant " + std::to_string(i) + " of a [CLASS]");
    }
    templates.validate();
    const auto records = scene_sentences("img1", "kitchen", templates);
    REQUIRE(records.size() == 80);
    CHECK(records[0].text == "variant 0 of a kitchen");
    CHECK(records[79].text == "variant 79 of a kitchen");
    CHECK(records[79].template_id == 79);
}

TEST_CASE("activity sentences substitute the scene's description") {
    const TemplateSet templates = TemplateSet::defaults();
    CHECK(activity_sentence("i", "kitchen", templates).text ==
          "a picture of a room to prepare and cook meals");
    CHECK(activity_sentence("i", "Bathroom", templates).text ==
          "a picture of a room to attend to personal hygiene and grooming");
    CHECK(activity_sentence("i", "kitchen", templates).kind == SentenceKind::activity);
    CHECK(activity_descriptions().size() == 27);

    try {
        activity_sentence("i", "spaceship", templates);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        // The error lists the known scenes to make config typos findable.
        CHECK(std::string(e.what()).find("kitchen") != std::string::npos);
    }
}

TEST_CASE("canonical relation sentence") {
    const TemplateSet templates = TemplateSet::defaults();
    const auto records = relation_sentence("i", rel(1, 2, Direction::front), kKitchenClasses,
                                           templates, PhrasingVariant::canonical);
    REQUIRE(records.size() == 1);
    CHECK(records[0].text == "A knife is in front of a refrigerator");
    CHECK(records[0].kind == SentenceKind::spatial);
    CHECK(records[0].subject_class == "knife");
    CHECK(records[0].object_class == "refrigerator");
    CHECK(records[0].relation == rel(1, 2, Direction::front));
    CHECK(records[0].template_id == 0);

    CHECK(relation_sentence("i", rel(1, 2, Direction::above), {{1, "lamp"}, {2, "table"}},
                            templates, PhrasingVariant::canonical)[0]
              .text == "A lamp is above a table");
}

TEST_CASE("article choice and casing normalization") {
    const TemplateSet templates = TemplateSet::defaults();
    const auto records = relation_sentence("i", rel(1, 2, Direction::front),
                                           {{1, "Oven"}, {2, "apple"}}, templates,
                                           PhrasingVariant::canonical);
    CHECK(records[0].text == "An oven is in front of an apple");
    CHECK(records[0].subject_class == "oven");
}

TEST_CASE("all variant emits one record per phrasing") {
    const TemplateSet templates = TemplateSet::defaults();
    const auto records = relation_sentence("i", rel(1, 2, Direction::front), kKitchenClasses,
                                           templates, PhrasingVariant::all);
    CHECK(texts(records) == std::vector<std::string>{
                                "A knife is in front of a refrigerator",
                                "A knife is closer than a refrigerator",
                                "A knife is nearer than a refrigerator",
                            });
}

TEST_CASE("seeded phrasing choice is deterministic and in range") {
    const TemplateSet templates = TemplateSet::defaults();
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
        const auto a = relation_sentence("i", rel(1, 2, Direction::behind), kKitchenClasses,
                                         templates, PhrasingVariant::seeded_random, seed);
        const auto b = relation_sentence("i", rel(1, 2, Direction::behind), kKitchenClasses,
                                         templates, PhrasingVariant::seeded_random, seed);
        REQUIRE(a.size() == 1);
        CHECK(a[0].text == b[0].text);
        CHECK(*a[0].template_id >= 0);
        CHECK(*a[0].template_id < 3);
    }
    // One-phrasing directions have nothing to vary.
    const auto fixed = relation_sentence("i", rel(1, 2, Direction::left), kKitchenClasses,
                                         templates, PhrasingVariant::seeded_random, 7);
    CHECK(fixed[0].text == "A knife is to the left of a refrigerator");
}

TEST_CASE("unknown instance ids are reported") {
    const TemplateSet templates = TemplateSet::defaults();
    CHECK_THROWS_AS(relation_sentence("i", rel(1, 9, Direction::front), kKitchenClasses,
                                      templates, PhrasingVariant::canonical),
                    NotFoundError);
}

TEST_CASE("template files: comments, whitespace, and validation") {
    TempDir dir;
    {
        std::ofstream out(dir / "templates.txt", std::ios::binary);
        out << "# scene templates\n"
            << "\n"
            << "  a photo of a [CLASS]  \r\n"
            << "an image of a [CLASS]\n";
    }
    TemplateSet templates = TemplateSet::defaults();
    templates.load_scene_templates(dir / "templates.txt");
    CHECK(templates.scene_templates ==
          std::vector<std::string>{"a photo of a [CLASS]", "an image of a [CLASS]"});
    templates.validate();

    {
        std::ofstream out(dir / "empty.txt", std::ios::binary);
        out << "# nothing but comments\n";
    }
    CHECK_THROWS_AS(templates.load_scene_templates(dir / "empty.txt"), ValidationError);
    CHECK_THROWS_AS(templates.load_scene_templates(dir / "absent.txt"), FormatError);

    templates.scene_templates = {"no placeholder here"};
    CHECK_THROWS_AS(templates.validate(), ValidationError);
    templates.scene_templates = {"[CLASS] next to a [CLASS]"};
    CHECK_THROWS_AS(templates.validate(), ValidationError);

    templates = TemplateSet::defaults();
    templates.spatial.erase(Direction::below);
    CHECK_THROWS_AS(templates.validate(), ValidationError);
}

TEST_CASE("name parsers") {
    CHECK(parse_phrasing_variant("canonical") == PhrasingVariant::canonical);
    CHECK(parse_phrasing_variant("all") == PhrasingVariant::all);
    CHECK(parse_phrasing_variant("seeded_random") == PhrasingVariant::seeded_random);
    CHECK_THROWS_AS(parse_phrasing_variant("random"), ArgumentError);

    for (CorpusComponent c :
         {CorpusComponent::scene, CorpusComponent::caption, CorpusComponent::depth_relations,
          CorpusComponent::horizontal_relations, CorpusComponent::vertical_relations,
          CorpusComponent::activity}) {
        CHECK(parse_corpus_component(corpus_component_name(c)) == c);
    }
    CHECK_THROWS_AS(parse_corpus_component("diagonal_relations"), ArgumentError);
    CHECK(std::string(sentence_kind_name(SentenceKind::caption)) == "caption");
}

TEST_CASE("stack corpus: scene block first, extras in component order") {
    Sample sample = blank_sample(4, 4, "img1", "bedroom");
    sample.captions = {"A bed in a room."};
    sample.segmentation.class_of = {{1, "tv"}, {2, "bed"}};
    const std::vector<SpatialRelation> relations = {rel(1, 2, Direction::front)};

    CorpusSpec spec;
    spec.components = {CorpusComponent::scene, CorpusComponent::caption,
                       CorpusComponent::depth_relations};
    const auto groups = compose_corpus(sample, relations, spec, TemplateSet::defaults());

    REQUIRE(groups.size() == 1);
    CHECK(groups[0].image_id == "img1");
    CHECK(groups[0].aggregate == "mean_block");
    CHECK(texts(groups[0].sentences) ==
          std::vector<std::string>{"a photo of a bedroom", "A bed in a room.",
                                   "A tv is in front of a bed"});
    CHECK(groups[0].sentences[1].kind == SentenceKind::caption);
}

TEST_CASE("corpus config errors") {
    Sample sample = blank_sample(4, 4, "img1", "bedroom");
    CorpusSpec spec;
    CHECK_THROWS_AS(compose_corpus(sample, {}, spec, TemplateSet::defaults()), ConfigError);

    spec.components = {CorpusComponent::caption};
    CHECK_THROWS_AS(compose_corpus(sample, {}, spec, TemplateSet::defaults()), ConfigError);

    spec.components = {CorpusComponent::depth_relations};
    spec.mode = CorpusMode::per_template;
    CHECK_THROWS_AS(compose_corpus(sample, {}, spec, TemplateSet::defaults()), ConfigError);
}

TEST_CASE("per-template corpus concatenates with lowercased relation joins") {
    Sample sample = blank_sample(4, 4, "img1", "bedroom");
    sample.segmentation.class_of = {{1, "tv"}, {2, "bed"}, {3, "lamp"}, {4, "sofa"}};
    const std::vector<SpatialRelation> relations = {rel(1, 2, Direction::front),
                                                    rel(3, 4, Direction::behind)};

    CorpusSpec spec;
    spec.components = {CorpusComponent::scene, CorpusComponent::depth_relations};
    spec.mode = CorpusMode::per_template;
    const auto groups = compose_corpus(sample, relations, spec, TemplateSet::defaults());

    REQUIRE(groups.size() == 1);
    CHECK(groups[0].aggregate == "single");
    REQUIRE(groups[0].sentences.size() == 1);
    CHECK(groups[0].sentences[0].text ==
          "a photo of a bedroom, a tv is in front of a bed, a lamp is behind a sofa");
}

TEST_CASE("per-template corpus keeps caption casing and emits one group per template") {
    Sample sample = blank_sample(4, 4, "img1", "bedroom");
    sample.captions = {"A bed in a room."};

    TemplateSet templates = TemplateSet::defaults();
    templates.scene_templates = {"a photo of a [CLASS]", "an image of a [CLASS]"};

    CorpusSpec spec;
    spec.components = {CorpusComponent::scene, CorpusComponent::caption};
    spec.mode = CorpusMode::per_template;
    const auto groups = compose_corpus(sample, {}, spec, templates);

    REQUIRE(groups.size() == 2);
    CHECK(groups[0].sentences[0].text == "a photo of a bedroom, A bed in a room.");
    CHECK(groups[1].sentences[0].text == "an image of a bedroom, A bed in a room.");
    CHECK(groups[1].sentences[0].template_id == 1);
}

TEST_CASE("per-axis relation cap is deterministic and axis-local") {
    Sample sample = blank_sample(4, 4, "img1", "bedroom");
    for (std::uint16_t id = 1; id <= 8; ++id) {
        sample.segmentation.class_of[id] = "obj" + std::to_string(id);
    }
    std::vector<SpatialRelation> relations;
    for (std::uint16_t o = 2; o <= 7; ++o) relations.push_back(rel(1, o, Direction::front));
    relations.push_back(rel(1, 8, Direction::left));

    CorpusSpec spec;
    spec.components = {CorpusComponent::scene, CorpusComponent::depth_relations,
                       CorpusComponent::horizontal_relations};
    spec.max_relations_per_axis = 2;
    spec.seed = 5;

    const auto groups = compose_corpus(sample, relations, spec, TemplateSet::defaults());
    REQUIRE(groups.size() == 1);
    std::vector<SpatialRelation> kept;
    for (const auto& s : groups[0].sentences) {
        if (s.relation) kept.push_back(*s.relation);
    }
    REQUIRE(kept.size() == 3);  // capped depth axis + the lone horizontal
    CHECK(kept[2].axis == Axis::horizontal);
    for (const auto& k : kept) {
        CHECK(std::find(relations.begin(), relations.end(), k) != relations.end());
    }

    // Same spec, same subset; different seed may pick another one.
    const auto again = compose_corpus(sample, relations, spec, TemplateSet::defaults());
    std::vector<SpatialRelation> kept_again;
    for (const auto& s : again[0].sentences) {
        if (s.relation) kept_again.push_back(*s.relation);
    }
    CHECK(kept == kept_again);

    spec.max_relations_per_axis = 50;
    const auto uncapped = compose_corpus(sample, relations, spec, TemplateSet::defaults());
    CHECK(uncapped[0].sentences.size() == 1 + relations.size());
}

TEST_CASE("adversarial triplet of the canonical example") {
    const auto t = adversarial_variants(rel(1, 2, Direction::front), kKitchenClasses,
                                        TemplateSet::defaults());
    CHECK(t.axis == Axis::depth);
    CHECK(t.original == "A knife is in front of a refrigerator");
    CHECK(t.relation_switch == "A knife is behind a refrigerator");
    CHECK(t.object_switch == "A refrigerator is in front of a knife");
}

TEST_CASE("relation and object switches are involutions on the text") {
    const TemplateSet templates = TemplateSet::defaults();
    SplitMix64 rng(31);
    const Direction dirs[] = {Direction::left,  Direction::right, Direction::above,
                              Direction::below, Direction::front, Direction::behind};
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = static_cast<std::uint16_t>(1 + rng.below(40));
        auto o = static_cast<std::uint16_t>(1 + rng.below(40));
        if (o == s) o = static_cast<std::uint16_t>(s + 1);
        const Direction d = dirs[rng.below(6)];
        const std::map<std::uint16_t, std::string> classes = {
            {s, "class" + std::to_string(rng.below(9))},
            {o, "thing" + std::to_string(rng.below(9))}};
        const SpatialRelation r{s, o, axis_of(d), d};

        const auto t = adversarial_variants(r, classes, templates);
        const auto flipped = adversarial_variants({s, o, r.axis, opposite(d)}, classes, templates);
        CHECK(flipped.relation_switch == t.original);
        CHECK(flipped.original == t.relation_switch);
        const auto swapped = adversarial_variants({o, s, r.axis, d}, classes, templates);
        CHECK(swapped.object_switch == t.original);
        CHECK(swapped.original == t.object_switch);
    }
}

TEST_SUITE_END();
