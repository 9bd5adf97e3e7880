#include "depthlang/sentences.hpp"

#include "depthlang/error.hpp"
#include "depthlang/rng.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace depthlang {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool starts_with_vowel(const std::string& word) {
    if (word.empty()) return false;
    switch (static_cast<char>(std::tolower(static_cast<unsigned char>(word.front())))) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u': return true;
        default: return false;
    }
}

/// "a knife" / "an oven"; class names keep dataset spelling, lowercased.
std::string with_article(const std::string& class_name) {
    const std::string lowered = to_lower(class_name);
    return (starts_with_vowel(lowered) ? "an " : "a ") + lowered;
}

std::string capitalize(std::string s) {
    if (!s.empty()) s.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(s.front())));
    return s;
}

std::string substitute_class(const std::string& template_text, const std::string& value,
                             const std::filesystem::path* source = nullptr) {
    const std::string placeholder = "[CLASS]";
    const auto pos = template_text.find(placeholder);
    if (pos == std::string::npos) {
        throw ValidationError("template '" + template_text + "'" +
                              (source ? " in " + source->string() : "") + " lacks a [CLASS] placeholder");
    }
    std::string out = template_text;
    out.replace(pos, placeholder.size(), value);
    return out;
}

/// Lowercase relation sentence body, e.g. "a tv is in front of a bed".
std::string render_relation_text(const std::string& subject_class, const std::string& phrasing,
                                 const std::string& object_class) {
    return with_article(subject_class) + " " + phrasing + " " + with_article(object_class);
}

const std::string& resolve_class(const std::map<std::uint16_t, std::string>& class_names,
                                 std::uint16_t id) {
    auto it = class_names.find(id);
    if (it == class_names.end()) {
        throw NotFoundError("no class name for instance id " + std::to_string(id));
    }
    return it->second;
}

std::uint64_t phrasing_seed(std::uint64_t seed, const SpatialRelation& rel) {
    std::uint64_t h = fnv1a64_u64(seed, 14695981039346656037ULL);
    h = fnv1a64_u64(rel.subject, h);
    h = fnv1a64_u64(rel.object, h);
    h = fnv1a64_u64(static_cast<std::uint64_t>(rel.axis), h);
    h = fnv1a64_u64(static_cast<std::uint64_t>(rel.direction), h);
    return h;
}

}  // namespace

const char* sentence_kind_name(SentenceKind kind) {
    switch (kind) {
        case SentenceKind::scene: return "scene";
        case SentenceKind::activity: return "activity";
        case SentenceKind::caption: return "caption";
        case SentenceKind::spatial: return "spatial";
    }
    return "?";
}

TemplateSet TemplateSet::defaults() {
    TemplateSet t;
    t.scene_templates = {"a photo of a [CLASS]"};
    t.activity_template = "a picture of a [CLASS]";
    t.spatial[Direction::front] = {"is in front of", "is closer than", "is nearer than"};
    t.spatial[Direction::behind] = {"is behind", "is farther away than", "is more distant than"};
    t.spatial[Direction::above] = {"is above"};
    t.spatial[Direction::below] = {"is below"};
    t.spatial[Direction::right] = {"is to the right of"};
    t.spatial[Direction::left] = {"is to the left of"};
    return t;
}

void TemplateSet::load_scene_templates(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open template file '" + path.string() + "'");
    std::vector<std::string> templates;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t");
        templates.push_back(line.substr(first, last - first + 1));
    }
    if (templates.empty()) {
        throw ValidationError("template file '" + path.string() + "' contains no templates");
    }
    scene_templates = std::move(templates);
}

void TemplateSet::validate() const {
    for (const auto& t : scene_templates) {
        const auto first = t.find("[CLASS]");
        if (first == std::string::npos || t.find("[CLASS]", first + 1) != std::string::npos) {
            throw ValidationError("scene template '" + t + "' must contain [CLASS] exactly once");
        }
    }
    for (Direction d : {Direction::left, Direction::right, Direction::above, Direction::below,
                        Direction::front, Direction::behind}) {
        auto it = spatial.find(d);
        if (it == spatial.end() || it->second.empty()) {
            throw ValidationError(std::string("no phrasing for direction '") + direction_name(d) + "'");
        }
    }
}

PhrasingVariant parse_phrasing_variant(const std::string& name) {
    if (name == "canonical") return PhrasingVariant::canonical;
    if (name == "all") return PhrasingVariant::all;
    if (name == "seeded_random") return PhrasingVariant::seeded_random;
    throw ArgumentError("unknown phrasing variant '" + name + "'");
}

CorpusComponent parse_corpus_component(const std::string& name) {
    if (name == "scene") return CorpusComponent::scene;
    if (name == "caption") return CorpusComponent::caption;
    if (name == "depth_relations") return CorpusComponent::depth_relations;
    if (name == "horizontal_relations") return CorpusComponent::horizontal_relations;
    if (name == "vertical_relations") return CorpusComponent::vertical_relations;
    if (name == "activity") return CorpusComponent::activity;
    throw ArgumentError("unknown corpus component '" + name + "'");
}

const char* corpus_component_name(CorpusComponent c) {
    switch (c) {
        case CorpusComponent::scene: return "scene";
        case CorpusComponent::caption: return "caption";
        case CorpusComponent::depth_relations: return "depth_relations";
        case CorpusComponent::horizontal_relations: return "horizontal_relations";
        case CorpusComponent::vertical_relations: return "vertical_relations";
        case CorpusComponent::activity: return "activity";
    }
    return "?";
}

std::vector<SentenceRecord> scene_sentences(const std::string& image_id,
                                            const std::string& scene_label,
                                            const TemplateSet& templates) {
    if (scene_label.empty()) throw ArgumentError("scene_sentences: empty scene label");
    std::vector<SentenceRecord> out;
    for (std::size_t i = 0; i < templates.scene_templates.size(); ++i) {
        SentenceRecord rec;
        rec.image_id = image_id;
        rec.kind = SentenceKind::scene;
        rec.template_id = static_cast<int>(i);
        rec.text = substitute_class(templates.scene_templates[i], to_lower(scene_label));
        out.push_back(std::move(rec));
    }
    return out;
}

const std::map<std::string, std::string>& activity_descriptions() {
    static const std::map<std::string, std::string> table = {
        {"printer room", "room to access and operate printing equipment"},
        {"bathroom", "room to attend to personal hygiene and grooming"},
        {"living room", "place to relax, socialize, and entertain guests in a house"},
        {"study", "room to focus on reading, learning, and researching"},
        {"conference room", "room to hold meetings and discussions"},
        {"study room", "room to concentrate on academic or professional tasks"},
        {"kitchen", "room to prepare and cook meals"},
        {"home office", "place to work on professional tasks from home"},
        {"bedroom", "room to sleep and rest in a home"},
        {"dinette", "place to have informal meals"},
        {"playroom", "place to engage in recreational activities and games for kids"},
        {"indoor balcony", "place to enjoy views and relax indoors"},
        {"laundry room", "room to clean and maintain clothing and fabrics"},
        {"basement", "place for storage, recreation, or utilities usually below ground level"},
        {"exercise room", "room to workout and engage in physical activities"},
        {"foyer", "area of the house to welcome guests and as an entryway"},
        {"home storage", "storage area in a house to store items and belongings"},
        {"cafe", "place to enjoy beverages and light meals in a social setting"},
        {"furniture store", "place to browse and purchase furniture items"},
        {"office kitchen", "place to prepare refreshments and snacks in an office"},
        {"student lounge", "place to relax and interact in a university or school setting for students"},
        {"dining room", "room to have formal meals with family or guests"},
        {"reception room", "room to welcome and accommodate visitors"},
        {"computer lab", "lab to use computers for learning or work purposes"},
        {"classroom", "room to attend educational lectures and lessons"},
        {"office", "place to carry out professional tasks and responsibilities"},
        {"bookstore", "place to browse and purchase books and literary materials"},
    };
    return table;
}

SentenceRecord activity_sentence(const std::string& image_id, const std::string& scene_label,
                                 const TemplateSet& templates) {
    const auto& table = activity_descriptions();
    auto it = table.find(to_lower(scene_label));
    if (it == table.end()) {
        std::ostringstream known;
        for (const auto& [scene, _] : table) {
            if (known.tellp() > 0) known << ", ";
            known << scene;
        }
        throw NotFoundError("no activity description for scene '" + scene_label +
                            "' (known scenes: " + known.str() + ")");
    }
    SentenceRecord rec;
    rec.image_id = image_id;
    rec.kind = SentenceKind::activity;
    rec.text = substitute_class(templates.activity_template, it->second);
    return rec;
}

std::vector<SentenceRecord> relation_sentence(const std::string& image_id,
                                              const SpatialRelation& rel,
                                              const std::map<std::uint16_t, std::string>& class_names,
                                              const TemplateSet& templates, PhrasingVariant variant,
                                              std::uint64_t seed) {
    const std::string& subject = resolve_class(class_names, rel.subject);
    const std::string& object = resolve_class(class_names, rel.object);
    auto it = templates.spatial.find(rel.direction);
    if (it == templates.spatial.end() || it->second.empty()) {
        throw ValidationError(std::string("no phrasing for direction '") +
                              direction_name(rel.direction) + "'");
    }
    const auto& phrasings = it->second;

    std::vector<std::size_t> chosen;
    switch (variant) {
        case PhrasingVariant::canonical: chosen = {0}; break;
        case PhrasingVariant::all:
            for (std::size_t i = 0; i < phrasings.size(); ++i) chosen.push_back(i);
            break;
        case PhrasingVariant::seeded_random: {
            SplitMix64 rng(phrasing_seed(seed, rel));
            chosen = {rng.below(phrasings.size())};
            break;
        }
    }

    std::vector<SentenceRecord> out;
    for (std::size_t i : chosen) {
        SentenceRecord rec;
        rec.image_id = image_id;
        rec.kind = SentenceKind::spatial;
        rec.relation = rel;
        rec.template_id = static_cast<int>(i);
        rec.subject_class = to_lower(subject);
        rec.object_class = to_lower(object);
        rec.text = capitalize(render_relation_text(subject, phrasings[i], object));
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

/// Relations of one axis, truncated to the per-axis cap. When the cap binds,
/// the kept subset is drawn with the seeded generator and re-sorted into
/// canonical order.
std::vector<SpatialRelation> select_axis_relations(const std::vector<SpatialRelation>& relations,
                                                   Axis axis, const CorpusSpec& spec,
                                                   const std::string& image_id) {
    std::vector<SpatialRelation> axis_rels;
    for (const auto& r : relations) {
        if (r.axis == axis) axis_rels.push_back(r);
    }
    if (!spec.max_relations_per_axis ||
        axis_rels.size() <= static_cast<std::size_t>(*spec.max_relations_per_axis)) {
        return axis_rels;
    }
    std::uint64_t h = fnv1a64(image_id, spec.seed ^ 14695981039346656037ULL);
    h = fnv1a64_u64(static_cast<std::uint64_t>(axis), h);
    const auto keep = sample_indices(axis_rels.size(),
                                     static_cast<std::size_t>(*spec.max_relations_per_axis), h);
    std::vector<SpatialRelation> out;
    for (std::size_t i : keep) out.push_back(axis_rels[i]);
    return out;
}

}  // namespace

std::vector<CorpusGroup> compose_corpus(const Sample& sample,
                                        const std::vector<SpatialRelation>& relations,
                                        const CorpusSpec& spec, const TemplateSet& templates) {
    if (spec.components.empty()) {
        throw ConfigError("corpus spec: components must be nonempty");
    }
    const bool wants_scene =
        std::find(spec.components.begin(), spec.components.end(), CorpusComponent::scene) !=
        spec.components.end();
    if (spec.mode == CorpusMode::per_template && !wants_scene) {
        throw ConfigError("per_template mode requires the scene component");
    }

    // Extra sentences (everything except the scene block), in component order.
    std::vector<SentenceRecord> extras;
    for (CorpusComponent component : spec.components) {
        switch (component) {
            case CorpusComponent::scene: break;
            case CorpusComponent::caption: {
                if (sample.captions.empty()) {
                    throw ConfigError("sample '" + sample.image_id +
                                      "': caption component requested but no captions are present");
                }
                for (const auto& caption : sample.captions) {
                    SentenceRecord rec;
                    rec.image_id = sample.image_id;
                    rec.kind = SentenceKind::caption;
                    rec.text = caption;
                    extras.push_back(std::move(rec));
                }
                break;
            }
            case CorpusComponent::activity:
                extras.push_back(activity_sentence(sample.image_id, sample.scene_label, templates));
                break;
            case CorpusComponent::depth_relations:
            case CorpusComponent::horizontal_relations:
            case CorpusComponent::vertical_relations: {
                const Axis axis = component == CorpusComponent::depth_relations ? Axis::depth
                                  : component == CorpusComponent::horizontal_relations
                                      ? Axis::horizontal
                                      : Axis::vertical;
                for (const auto& rel :
                     select_axis_relations(relations, axis, spec, sample.image_id)) {
                    auto records = relation_sentence(sample.image_id, rel,
                                                     sample.segmentation.class_of, templates,
                                                     spec.variant, spec.seed);
                    extras.insert(extras.end(), records.begin(), records.end());
                }
                break;
            }
        }
    }

    std::vector<CorpusGroup> groups;
    if (spec.mode == CorpusMode::stack) {
        CorpusGroup g;
        g.image_id = sample.image_id;
        g.mode = CorpusMode::stack;
        g.aggregate = "mean_block";
        if (wants_scene) {
            auto block = scene_sentences(sample.image_id, sample.scene_label, templates);
            g.sentences.insert(g.sentences.end(), block.begin(), block.end());
        }
        g.sentences.insert(g.sentences.end(), extras.begin(), extras.end());
        groups.push_back(std::move(g));
    } else {
        const auto block = scene_sentences(sample.image_id, sample.scene_label, templates);
        for (const auto& scene_record : block) {
            CorpusGroup g;
            g.image_id = sample.image_id;
            g.mode = CorpusMode::per_template;
            g.aggregate = "single";

            std::string text = scene_record.text;
            for (const auto& extra : extras) {
                // Relation sentences join in their lowercase form; captions
                // keep their original casing.
                text += ", ";
                text += extra.kind == SentenceKind::spatial
                            ? std::string(1, static_cast<char>(std::tolower(
                                                 static_cast<unsigned char>(extra.text.front())))) +
                                  extra.text.substr(1)
                            : extra.text;
            }
            SentenceRecord rec;
            rec.image_id = sample.image_id;
            rec.kind = SentenceKind::scene;
            rec.template_id = scene_record.template_id;
            rec.text = std::move(text);
            g.sentences.push_back(std::move(rec));
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

AdversarialTriplet adversarial_variants(const SpatialRelation& rel,
                                        const std::map<std::uint16_t, std::string>& class_names,
                                        const TemplateSet& templates) {
    const std::string& subject = resolve_class(class_names, rel.subject);
    const std::string& object = resolve_class(class_names, rel.object);
    auto phrasing = [&](Direction d) -> const std::string& {
        auto it = templates.spatial.find(d);
        if (it == templates.spatial.end() || it->second.empty()) {
            throw ValidationError(std::string("no phrasing for direction '") + direction_name(d) + "'");
        }
        return it->second.front();
    };

    AdversarialTriplet t;
    t.axis = rel.axis;
    t.original = capitalize(render_relation_text(subject, phrasing(rel.direction), object));
    t.relation_switch =
        capitalize(render_relation_text(subject, phrasing(opposite(rel.direction)), object));
    t.object_switch = capitalize(render_relation_text(object, phrasing(rel.direction), subject));
    return t;
}

}  // namespace depthlang
