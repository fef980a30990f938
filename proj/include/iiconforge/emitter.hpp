#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iiconforge/alignment.hpp"
#include "iiconforge/enricher.hpp"
#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"
#include "iiconforge/rdf.hpp"

namespace iiconforge {

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kIconNamespace = "https://w3id.org/icon/ontology/";
inline constexpr std::string_view kSimNamespace = "https://w3id.org/simulation/ontology/";
inline constexpr std::string_view kLicenseIri = "https://creativecommons.org/licenses/by/4.0/";

class IncompleteProfile : public ConfigError {
public:
    explicit IncompleteProfile(const std::string& what)
        : ConfigError("vocabulary profile is missing an entry for: " + what) {}
};

/// Every IRI the emitters write, keyed so a config file can swap the whole
/// vocabulary without touching code. Keys into the per-tag maps are the
/// level tags ("iconographic", "iconographic/character", ...).
struct VocabularyProfile {
    std::string ns = std::string(kIigNamespace); // minted nodes live here
    std::string prefix = std::string(kIigPrefix);
    std::map<std::string, Iri> shortcut_property;  // keyed by macro level tag
    std::map<std::string, Iri> recognition_class;  // keyed by full tag
    std::map<std::string, Iri> entity_class;       // keyed by full tag
    std::map<std::string, Iri> qualifier_property; // keyed by relation kind tag
    std::optional<Iri> about_work;
    std::optional<Iri> recognized_entity;
    std::optional<Iri> interpretation_link;
    std::optional<Iri> simulation_class;
    std::optional<Iri> simulacrum_property;
    std::optional<Iri> reality_property;
    std::optional<Iri> context_property;
};

inline VocabularyProfile default_profile() {
    VocabularyProfile p;
    std::string icon(kIconNamespace), sim(kSimNamespace);

    p.shortcut_property["preiconographic"] = Iri(icon + "preiconographicallyDepicts");
    p.shortcut_property["iconographic"] = Iri(icon + "iconographicallyDepicts");
    p.shortcut_property["iconological"] = Iri(icon + "iconologicallyRepresents");

    auto put = [&](const std::string& tag, const std::string& stem) {
        p.recognition_class[tag] = Iri(icon + stem + "Recognition");
        p.entity_class[tag] = Iri(icon + stem);
    };
    put("preiconographic", "PreiconographicEntity");
    put("iconographic", "IconographicEntity");
    put("iconological", "IconologicalEntity");
    put("preiconographic/natural_element", "NaturalElement");
    put("preiconographic/action", "Action");
    put("preiconographic/expression", "Expression");
    put("iconographic/character", "Character");
    put("iconographic/event", "Event");
    put("iconographic/story", "Story");
    put("iconographic/attribute", "Attribute");
    put("iconographic/place", "Place");
    put("iconological/meaning", "Meaning");
    put("iconological/cultural_phenomenon", "CulturalPhenomenon");

    p.qualifier_property["wears"] = Iri(icon + "wears");
    p.qualifier_property["expression_gesture_or_pose"] = Iri(icon + "showsExpressionGestureOrPose");
    p.qualifier_property["symbolizes"] = Iri(icon + "symbolizes");
    p.qualifier_property["other"] = Iri(icon + "hasQualifier");

    p.about_work = Iri(icon + "aboutWorkOfArt");
    p.recognized_entity = Iri(icon + "recognizedEntity");
    p.interpretation_link = Iri(sim + "hasSimulation");
    p.simulation_class = Iri(sim + "Simulation");
    p.simulacrum_property = Iri(sim + "hasSimulacrum");
    p.reality_property = Iri(sim + "hasRealityCounterpart");
    p.context_property = Iri(sim + "hasContext");
    return p;
}

/// Overlay profile entries from a flat key=value file ("#" comments).
/// Recognized keys: shortcut.<level>, class.recognition.<tag>,
/// class.entity.<tag>, qualifier.<kind>, about_work, recognized_entity,
/// interpretation_link, class.simulation, simulacrum, reality, context.
inline VocabularyProfile load_profile(const std::string& path,
                                      VocabularyProfile base = default_profile()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open profile file: " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string sv = text::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto eq = sv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("profile " + path + " line " + std::to_string(line_no) +
                              ": expected key=value");
        std::string key(text::trim(sv.substr(0, eq)));
        std::string value(text::trim(sv.substr(eq + 1)));
        if (key == "prefix") {
            if (value.empty() || !rdf::turtle_local_name_ok(value))
                throw ConfigError("profile " + path + " line " + std::to_string(line_no) +
                                  ": bad prefix");
            base.prefix = value;
            continue;
        }
        if (!Iri::is_valid(value))
            throw ConfigError("profile " + path + " line " + std::to_string(line_no) +
                              ": value is not an IRI");
        if (key == "namespace") {
            base.ns = value;
            continue;
        }
        Iri iri(value);
        if (key.rfind("shortcut.", 0) == 0)
            base.shortcut_property[key.substr(9)] = iri;
        else if (key.rfind("class.recognition.", 0) == 0)
            base.recognition_class[key.substr(18)] = iri;
        else if (key.rfind("class.entity.", 0) == 0)
            base.entity_class[key.substr(13)] = iri;
        else if (key.rfind("qualifier.", 0) == 0)
            base.qualifier_property[key.substr(10)] = iri;
        else if (key == "about_work")
            base.about_work = iri;
        else if (key == "recognized_entity")
            base.recognized_entity = iri;
        else if (key == "interpretation_link")
            base.interpretation_link = iri;
        else if (key == "class.simulation")
            base.simulation_class = iri;
        else if (key == "simulacrum")
            base.simulacrum_property = iri;
        else if (key == "reality")
            base.reality_property = iri;
        else if (key == "context")
            base.context_property = iri;
        else
            throw ConfigError("profile " + path + " line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
    }
    return base;
}

namespace detail {

inline const Iri& profile_get(const std::map<std::string, Iri>& m, const std::string& key,
                              std::string_view group) {
    auto it = m.find(key);
    if (it == m.end()) throw IncompleteProfile(std::string(group) + "." + key);
    return it->second;
}

inline const Iri& profile_get(const std::optional<Iri>& v, std::string_view name) {
    if (!v) throw IncompleteProfile(std::string(name));
    return *v;
}

inline uint64_t fnv1a(std::string_view data, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex16(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace detail

/// Content-addressed node id: the same recognition always mints the same
/// IRI, so re-emitting is idempotent and canonical output is stable.
inline Iri mint_recognition_node(const Recognition& rec, std::string_view ns = kIigNamespace) {
    auto quals = rec.qualifier_relations;
    std::sort(quals.begin(), quals.end());
    uint64_t h = detail::fnv1a(rec.artwork.str());
    h = detail::fnv1a("\x1e", h);
    h = detail::fnv1a(rec.element.str(), h);
    h = detail::fnv1a("\x1e", h);
    h = detail::fnv1a(rec.level.tag(), h);
    for (const auto& q : quals) {
        h = detail::fnv1a("\x1e", h);
        h = detail::fnv1a(to_tag(q.kind), h);
        h = detail::fnv1a("\x1f", h);
        h = detail::fnv1a(q.target, h);
    }
    return Iri(std::string(ns) + "recognition/" + detail::hex16(h));
}

inline Iri mint_simulation_node(const Iri& symbol, const Iri& meaning, std::string_view context,
                                std::string_view ns = kIigNamespace) {
    uint64_t h = detail::fnv1a(symbol.str());
    h = detail::fnv1a("\x1e", h);
    h = detail::fnv1a(meaning.str(), h);
    h = detail::fnv1a("\x1e", h);
    h = detail::fnv1a(context, h);
    return Iri(std::string(ns) + "simulation/" + detail::hex16(h));
}

/// One link triple per interpretation plus the simulation node's four
/// triples, which are shared whenever (symbol, meaning, context) repeats.
inline std::vector<Triple> emit_interpretations(const std::vector<Interpretation>& interps,
                                                const VocabularyProfile& profile) {
    if (interps.empty()) return {};
    const Iri& link = detail::profile_get(profile.interpretation_link, "interpretation_link");
    const Iri& klass = detail::profile_get(profile.simulation_class, "class.simulation");
    const Iri& simulacrum = detail::profile_get(profile.simulacrum_property, "simulacrum");
    const Iri& reality = detail::profile_get(profile.reality_property, "reality");
    const Iri& context = detail::profile_get(profile.context_property, "context");

    std::vector<Triple> out;
    out.reserve(interps.size() * 5);
    for (const auto& interp : interps) {
        std::string sim =
            mint_simulation_node(interp.symbol, interp.meaning, interp.context, profile.ns).str();
        out.push_back({interp.artwork.str(), link.str(), RdfTerm::iri(sim)});
        out.push_back({sim, std::string(kRdfType), RdfTerm::iri(klass.str())});
        out.push_back({sim, simulacrum.str(), RdfTerm::iri(interp.symbol.str())});
        out.push_back({sim, reality.str(), RdfTerm::iri(interp.meaning.str())});
        out.push_back({sim, context.str(), RdfTerm::literal(interp.context)});
    }
    return out;
}

/// Two triples per recognition (the level shortcut and the element's
/// class), then the interpretation footprint.
inline std::vector<Triple> emit_shortcut(const std::vector<Recognition>& recognitions,
                                         const std::vector<Interpretation>& interps,
                                         const VocabularyProfile& profile) {
    std::vector<Triple> out;
    out.reserve(recognitions.size() * 2 + interps.size() * 5);
    for (const auto& rec : recognitions) {
        const Iri& pred = detail::profile_get(profile.shortcut_property,
                                              std::string(to_tag(rec.level.level)), "shortcut");
        const Iri& klass = detail::profile_get(profile.entity_class, rec.level.tag(), "class.entity");
        out.push_back({rec.artwork.str(), pred.str(), RdfTerm::iri(rec.element.str())});
        out.push_back({rec.element.str(), std::string(kRdfType), RdfTerm::iri(klass.str())});
    }
    auto sims = emit_interpretations(interps, profile);
    out.insert(out.end(), sims.begin(), sims.end());
    return out;
}

/// Reified recognitions: three base triples per record plus one per
/// qualifier, all hanging off a content-addressed recognition node, then
/// the same interpretation footprint as the shortcut profile.
inline std::vector<Triple> emit_full(const std::vector<Recognition>& recognitions,
                                     const std::vector<Interpretation>& interps,
                                     const VocabularyProfile& profile) {
    const Iri& about = detail::profile_get(profile.about_work, "about_work");
    const Iri& entity = detail::profile_get(profile.recognized_entity, "recognized_entity");

    std::vector<Triple> out;
    out.reserve(recognitions.size() * 3 + interps.size() * 5);
    for (const auto& rec : recognitions) {
        const Iri& klass =
            detail::profile_get(profile.recognition_class, rec.level.tag(), "class.recognition");
        std::string node = mint_recognition_node(rec, profile.ns).str();
        out.push_back({node, std::string(kRdfType), RdfTerm::iri(klass.str())});
        out.push_back({node, about.str(), RdfTerm::iri(rec.artwork.str())});
        out.push_back({node, entity.str(), RdfTerm::iri(rec.element.str())});
        for (const auto& q : rec.qualifier_relations) {
            const Iri& qp = detail::profile_get(profile.qualifier_property,
                                                std::string(to_tag(q.kind)), "qualifier");
            RdfTerm target =
                q.target_is_iri ? RdfTerm::iri(q.target) : RdfTerm::literal(q.target);
            out.push_back({node, qp.str(), target});
        }
    }
    auto sims = emit_interpretations(interps, profile);
    out.insert(out.end(), sims.begin(), sims.end());
    return out;
}

/// Invert emit_full: rebuild (artwork, element, level, qualifiers) from
/// triples. Provenance and annotations are not carried by the RDF shape.
inline std::vector<Recognition> read_full(const std::vector<Triple>& triples,
                                          const VocabularyProfile& profile) {
    const Iri& about = detail::profile_get(profile.about_work, "about_work");
    const Iri& entity = detail::profile_get(profile.recognized_entity, "recognized_entity");

    std::map<std::string, InterpretationLevel> class_to_level;
    for (const auto& [tag, iri] : profile.recognition_class)
        if (auto level = InterpretationLevel::parse(tag)) class_to_level.emplace(iri.str(), *level);
    std::map<std::string, RelationKind> pred_to_kind;
    for (const auto& [tag, iri] : profile.qualifier_property) {
        if (auto kind = parse_relation_kind(tag)) pred_to_kind.emplace(iri.str(), *kind);
    }

    struct Partial {
        std::optional<InterpretationLevel> level;
        std::optional<Iri> artwork;
        std::optional<Iri> element;
        std::vector<QualifierRelation> quals;
    };
    std::map<std::string, Partial> nodes;
    for (const auto& t : triples) {
        auto grab = [&]() -> Partial& { return nodes[t.subject]; };
        if (t.predicate == kRdfType) {
            auto it = class_to_level.find(t.object.value);
            if (it != class_to_level.end()) grab().level = it->second;
            continue;
        }
        if (t.predicate == about.str()) {
            if (t.object.is_iri()) grab().artwork = Iri(t.object.value);
            continue;
        }
        if (t.predicate == entity.str()) {
            if (t.object.is_iri()) grab().element = Iri(t.object.value);
            continue;
        }
        auto kind = pred_to_kind.find(t.predicate);
        if (kind != pred_to_kind.end())
            grab().quals.push_back({kind->second, t.object.value, t.object.is_iri()});
    }

    std::vector<Recognition> out;
    for (auto& [id, partial] : nodes) {
        if (!partial.level) continue; // typed by something else entirely
        if (!partial.artwork || !partial.element)
            throw InputError("recognition node " + id + " lacks artwork or element");
        Recognition rec;
        rec.artwork = *partial.artwork;
        rec.element = *partial.element;
        rec.level = *partial.level;
        rec.qualifier_relations = std::move(partial.quals);
        sort_unique_qualifiers(rec.qualifier_relations);
        rec.provenance = Provenance::SourceKG;
        out.push_back(std::move(rec));
    }
    return dedupe_recognitions(out);
}

struct FileSummary {
    size_t triple_count = 0;
    size_t byte_count = 0;
};

/// Canonical N-Triples: serialized, sorted, deduped, newline-terminated.
inline FileSummary write_ntriples(const std::vector<Triple>& triples, const std::string& path) {
    auto lines = rdf::canonical_lines(triples);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    FileSummary summary;
    for (const auto& line : lines) {
        out << line << '\n';
        summary.byte_count += line.size() + 1;
    }
    summary.triple_count = lines.size();
    if (!out.flush()) throw IoFailure(path);
    return summary;
}

/// Turtle mirror of the canonical form: same ordering, prefix-compressed.
inline FileSummary write_turtle(const std::vector<Triple>& triples, const std::string& path,
                                std::string_view ns = kIigNamespace,
                                std::string_view prefix = kIigPrefix) {
    auto lines = rdf::canonical_lines(triples);
    std::vector<Triple> sorted;
    sorted.reserve(lines.size());
    for (size_t i = 0; i < lines.size(); ++i)
        if (auto t = rdf::parse_ntriples_line(lines[i], i + 1)) sorted.push_back(std::move(*t));

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    std::string header =
        "@prefix " + std::string(prefix) + ": <" + std::string(ns) + "> .\n\n";
    out << header;
    FileSummary summary;
    summary.byte_count = header.size();
    for (const auto& t : sorted) {
        std::string line = rdf::turtle_iri(t.subject, ns, prefix) + " " +
                           rdf::turtle_iri(t.predicate, ns, prefix) + " " +
                           rdf::turtle_term(t.object, ns, prefix) + " .\n";
        out << line;
        summary.byte_count += line.size();
    }
    summary.triple_count = sorted.size();
    if (!out.flush()) throw IoFailure(path);
    return summary;
}

enum class SerializationFormat { NTriples, Turtle };

inline FileSummary serialize(const std::vector<Triple>& triples, SerializationFormat format,
                             const std::string& path, std::string_view ns = kIigNamespace,
                             std::string_view prefix = kIigPrefix) {
    if (format == SerializationFormat::NTriples) return write_ntriples(triples, path);
    return write_turtle(triples, path, ns, prefix);
}

struct CatalogueInput {
    std::string title = "iiconforge dataset";
    std::string timestamp; // xsd:dateTime, supplied by the caller
    std::vector<Iri> derived_from;
    std::vector<std::pair<std::string, size_t>> files; // name, triple count
};

/// DCAT-shaped dataset description: license, modification time, source
/// provenance, one distribution per emitted file.
inline std::vector<Triple> emit_catalogue(const CatalogueInput& input) {
    if (input.timestamp.size() < 19 || input.timestamp.find('T') == std::string::npos)
        throw ConfigError("catalogue timestamp must be an xsd:dateTime");

    const std::string dcat = "http://www.w3.org/ns/dcat#";
    const std::string dct = "http://purl.org/dc/terms/";
    const std::string xsd = "http://www.w3.org/2001/XMLSchema#";

    std::string ds = std::string(kIigNamespace) + "catalogue/dataset";
    std::vector<Triple> out;
    out.push_back({ds, std::string(kRdfType), RdfTerm::iri(dcat + "Dataset")});
    out.push_back({ds, dct + "title", RdfTerm::literal(input.title)});
    out.push_back({ds, dct + "license", RdfTerm::iri(std::string(kLicenseIri))});
    out.push_back({ds, dct + "modified", RdfTerm::typed_literal(input.timestamp, xsd + "dateTime")});
    for (const auto& src : input.derived_from)
        out.push_back({ds, "http://www.w3.org/ns/prov#wasDerivedFrom", RdfTerm::iri(src.str())});
    for (const auto& [name, count] : input.files) {
        std::string local = text::mint_camel_case(name);
        if (local.empty()) local = "file";
        std::string dist = std::string(kIigNamespace) + "catalogue/distribution/" + local;
        out.push_back({ds, dcat + "distribution", RdfTerm::iri(dist)});
        out.push_back({dist, std::string(kRdfType), RdfTerm::iri(dcat + "Distribution")});
        out.push_back({dist, dct + "title", RdfTerm::literal(name)});
        out.push_back({dist, "http://rdfs.org/ns/void#triples",
                       RdfTerm::typed_literal(std::to_string(count), xsd + "integer")});
    }
    return out;
}

} // namespace iiconforge
