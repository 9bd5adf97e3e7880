#pragma once

#include "depthlang/grid.hpp"
#include "depthlang/relations.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace depthlang {

enum class SentenceKind { scene, activity, caption, spatial };
const char* sentence_kind_name(SentenceKind kind);

/// One generated sentence. relation (and the resolved class names) are
/// present exactly when kind == spatial.
struct SentenceRecord {
    std::string image_id;
    std::string text;
    SentenceKind kind = SentenceKind::scene;
    std::optional<SpatialRelation> relation;
    std::optional<int> template_id;
    std::optional<std::string> subject_class;
    std::optional<std::string> object_class;
};

/// Scene templates carry a [CLASS] placeholder; spatial phrasings are the
/// words between the two object mentions. The first phrasing of each
/// direction is the canonical one.
struct TemplateSet {
    std::vector<std::string> scene_templates;
    std::string activity_template;
    std::map<Direction, std::vector<std::string>> spatial;

    /// Built-in defaults: one scene template ("a photo of a [CLASS]"), the
    /// activity variant ("a picture of a [CLASS]"), and the standard
    /// phrasings per direction.
    static TemplateSet defaults();

    /// Replaces scene_templates with the lines of a template file (one
    /// template per line, # comments and blank lines skipped).
    void load_scene_templates(const std::filesystem::path& path);

    /// Every direction needs at least one phrasing and every scene template
    /// exactly one [CLASS]. Throws ValidationError otherwise.
    void validate() const;
};

/// How spatial relations are worded.
enum class PhrasingVariant {
    canonical,      // first phrasing
    all,            // one record per phrasing
    seeded_random,  // one phrasing picked deterministically from the seed
};
PhrasingVariant parse_phrasing_variant(const std::string& name);

enum class CorpusComponent { scene, caption, depth_relations, horizontal_relations, vertical_relations, activity };
CorpusComponent parse_corpus_component(const std::string& name);
const char* corpus_component_name(CorpusComponent c);

enum class CorpusMode { stack, per_template };

/// Text-level corpus recipe. stack mode emits one group per image whose
/// scene block is meant to be embedded and averaged while every other
/// sentence stands alone; per_template mode emits one group per scene
/// template holding the template text concatenated with all extra sentences.
struct CorpusSpec {
    std::vector<CorpusComponent> components;
    CorpusMode mode = CorpusMode::stack;
    std::optional<int> max_relations_per_axis;  // nullopt = unlimited
    std::uint64_t seed = 0;
    PhrasingVariant variant = PhrasingVariant::canonical;
};

struct CorpusGroup {
    std::string image_id;
    CorpusMode mode = CorpusMode::stack;
    std::string aggregate;  // "mean_block" (stack) or "single" (per_template)
    std::vector<SentenceRecord> sentences;
};

/// One scene sentence per template, in template order.
std::vector<SentenceRecord> scene_sentences(const std::string& image_id,
                                            const std::string& scene_label,
                                            const TemplateSet& templates);

/// The 27 scene-name -> activity-description pairs.
const std::map<std::string, std::string>& activity_descriptions();

/// Renders the activity template with the scene's activity description.
/// Unmapped scenes raise NotFoundError naming the known scenes.
SentenceRecord activity_sentence(const std::string& image_id, const std::string& scene_label,
                                 const TemplateSet& templates);

/// Renders a relation as standalone sentence records ("A knife is in front
/// of a refrigerator"). class_names maps instance ids to class names.
std::vector<SentenceRecord> relation_sentence(const std::string& image_id,
                                              const SpatialRelation& rel,
                                              const std::map<std::uint16_t, std::string>& class_names,
                                              const TemplateSet& templates, PhrasingVariant variant,
                                              std::uint64_t seed = 0);

/// Applies a corpus spec to one sample's relations.
std::vector<CorpusGroup> compose_corpus(const Sample& sample,
                                        const std::vector<SpatialRelation>& relations,
                                        const CorpusSpec& spec, const TemplateSet& templates);

/// The two adversarial edits of a relation sentence, plus the original.
/// relation_switch flips the direction word; object_switch swaps the two
/// object mentions. Both are involutions on the rendered text.
struct AdversarialTriplet {
    Axis axis = Axis::horizontal;
    std::string original;
    std::string relation_switch;
    std::string object_switch;
};

AdversarialTriplet adversarial_variants(const SpatialRelation& rel,
                                        const std::map<std::uint16_t, std::string>& class_names,
                                        const TemplateSet& templates);

}  // namespace depthlang
