#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/text.hpp"

namespace iiconforge {

/// Absolute IRI. Valid iff non-empty, free of whitespace, and carrying a
/// scheme separator before any path character.
class Iri {
public:
    Iri() = default;
    explicit Iri(std::string value) : value_(std::move(value)) {
        if (!is_valid(value_)) throw InputError("invalid IRI: '" + value_ + "'");
    }

    static bool is_valid(std::string_view s) {
        if (s.empty()) return false;
        size_t colon = std::string_view::npos;
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (text::is_ascii_space(c) || c == '<' || c == '>' || c == '"') return false;
            if (c == ':' && colon == std::string_view::npos) colon = i;
        }
        return colon != std::string_view::npos && colon > 0;
    }

    const std::string& str() const { return value_; }
    bool empty() const { return value_.empty(); }

    /// Substring after the last '/', '#' or ':' -- used as a fallback label.
    std::string local_name() const {
        size_t pos = value_.find_last_of("/#:");
        return pos == std::string::npos ? value_ : value_.substr(pos + 1);
    }

    auto operator<=>(const Iri&) const = default;

private:
    std::string value_;
};

/// The three interpretation levels of an artistic reading.
enum class Level {
    PreIconographic,
    Iconographic,
    Iconological,
};

/// Specific class within a level. Each subclass belongs to exactly one level.
enum class Subclass {
    // Pre-iconographic
    NaturalElement,
    Action,
    Expression,
    // Iconographic
    Character,
    Event,
    Story,
    Attribute,
    Place,
    // Iconological
    Meaning,
    CulturalPhenomenon,
};

inline Level level_of(Subclass s) {
    switch (s) {
        case Subclass::NaturalElement:
        case Subclass::Action:
        case Subclass::Expression:
            return Level::PreIconographic;
        case Subclass::Character:
        case Subclass::Event:
        case Subclass::Story:
        case Subclass::Attribute:
        case Subclass::Place:
            return Level::Iconographic;
        case Subclass::Meaning:
        case Subclass::CulturalPhenomenon:
            return Level::Iconological;
    }
    return Level::PreIconographic; // unreachable
}

inline std::string_view to_tag(Level l) {
    switch (l) {
        case Level::PreIconographic: return "preiconographic";
        case Level::Iconographic: return "iconographic";
        case Level::Iconological: return "iconological";
    }
    return "";
}

inline std::string_view to_tag(Subclass s) {
    switch (s) {
        case Subclass::NaturalElement: return "natural_element";
        case Subclass::Action: return "action";
        case Subclass::Expression: return "expression";
        case Subclass::Character: return "character";
        case Subclass::Event: return "event";
        case Subclass::Story: return "story";
        case Subclass::Attribute: return "attribute";
        case Subclass::Place: return "place";
        case Subclass::Meaning: return "meaning";
        case Subclass::CulturalPhenomenon: return "cultural_phenomenon";
    }
    return "";
}

inline std::optional<Level> parse_level_tag(std::string_view tag) {
    if (tag == "preiconographic") return Level::PreIconographic;
    if (tag == "iconographic") return Level::Iconographic;
    if (tag == "iconological") return Level::Iconological;
    return std::nullopt;
}

inline std::optional<Subclass> parse_subclass_tag(std::string_view tag) {
    static const std::pair<std::string_view, Subclass> table[] = {
        {"natural_element", Subclass::NaturalElement},
        {"action", Subclass::Action},
        {"expression", Subclass::Expression},
        {"character", Subclass::Character},
        {"event", Subclass::Event},
        {"story", Subclass::Story},
        {"attribute", Subclass::Attribute},
        {"place", Subclass::Place},
        {"meaning", Subclass::Meaning},
        {"cultural_phenomenon", Subclass::CulturalPhenomenon},
    };
    for (auto& [t, s] : table)
        if (t == tag) return s;
    return std::nullopt;
}

constexpr Subclass kAllSubclasses[] = {
    Subclass::NaturalElement, Subclass::Action,  Subclass::Expression,
    Subclass::Character,      Subclass::Event,   Subclass::Story,
    Subclass::Attribute,      Subclass::Place,   Subclass::Meaning,
    Subclass::CulturalPhenomenon,
};

/// A leveled classification. The subclass is optional: free-text-derived
/// recognitions carry only the macro level, typed-statement recognitions
/// carry the specific class. When present, the subclass must belong to the
/// level.
struct InterpretationLevel {
    Level level = Level::PreIconographic;
    std::optional<Subclass> subclass;

    InterpretationLevel() = default;
    explicit InterpretationLevel(Level l) : level(l) {}
    explicit InterpretationLevel(Subclass s) : level(level_of(s)), subclass(s) {}
    InterpretationLevel(Level l, Subclass s) : level(l), subclass(s) {
        if (level_of(s) != l)
            throw InputError("subclass '" + std::string(to_tag(s)) +
                             "' does not belong to level '" + std::string(to_tag(l)) + "'");
    }

    /// Textual form, e.g. "iconographic/character" or bare "iconological".
    std::string tag() const {
        std::string out(to_tag(level));
        if (subclass) {
            out.push_back('/');
            out += to_tag(*subclass);
        }
        return out;
    }

    static std::optional<InterpretationLevel> parse(std::string_view tag) {
        size_t slash = tag.find('/');
        auto lvl = parse_level_tag(tag.substr(0, slash));
        if (!lvl) return std::nullopt;
        if (slash == std::string_view::npos) return InterpretationLevel(*lvl);
        auto sub = parse_subclass_tag(tag.substr(slash + 1));
        if (!sub || level_of(*sub) != *lvl) return std::nullopt;
        return InterpretationLevel(*lvl, *sub);
    }

    auto operator<=>(const InterpretationLevel&) const = default;
};

enum class Source { WikidataLike, ArCoLike };

struct Artwork {
    Iri id;
    std::string label;
    Source source = Source::WikidataLike;

    auto operator<=>(const Artwork&) const = default;
};

/// An element depicted in an artwork. For text-minted elements (no source
/// IRI) the id is a deterministic function of the normalized label, so one
/// label always maps to one node.
struct DepictedElement {
    Iri id;
    std::string label;
    std::set<Iri> type_ids;

    auto operator<=>(const DepictedElement&) const = default;
};

enum class RelationKind { Wears, ExpressionGestureOrPose, Symbolizes, Other };

inline std::string_view to_tag(RelationKind k) {
    switch (k) {
        case RelationKind::Wears: return "wears";
        case RelationKind::ExpressionGestureOrPose: return "expression_gesture_or_pose";
        case RelationKind::Symbolizes: return "symbolizes";
        case RelationKind::Other: return "other";
    }
    return "";
}

inline std::optional<RelationKind> parse_relation_kind(std::string_view tag) {
    if (tag == "wears") return RelationKind::Wears;
    if (tag == "expression_gesture_or_pose") return RelationKind::ExpressionGestureOrPose;
    if (tag == "symbolizes") return RelationKind::Symbolizes;
    if (tag == "other") return RelationKind::Other;
    return std::nullopt;
}

/// Qualifier attached to a recognition: the target is either another
/// node's IRI or a plain literal.
struct QualifierRelation {
    RelationKind kind = RelationKind::Other;
    std::string target;
    bool target_is_iri = false;

    auto operator<=>(const QualifierRelation&) const = default;
};

/// Where a recognition came from, ordered by trust:
/// ManualMapping > SourceKG > ParserHeuristic.
enum class Provenance { ParserHeuristic, SourceKG, ManualMapping };

inline int trust_rank(Provenance p) {
    switch (p) {
        case Provenance::ManualMapping: return 2;
        case Provenance::SourceKG: return 1;
        case Provenance::ParserHeuristic: return 0;
    }
    return 0;
}

inline std::string_view to_tag(Provenance p) {
    switch (p) {
        case Provenance::SourceKG: return "source_kg";
        case Provenance::ParserHeuristic: return "parser_heuristic";
        case Provenance::ManualMapping: return "manual_mapping";
    }
    return "";
}

inline std::optional<Provenance> parse_provenance(std::string_view tag) {
    if (tag == "source_kg") return Provenance::SourceKG;
    if (tag == "parser_heuristic") return Provenance::ParserHeuristic;
    if (tag == "manual_mapping") return Provenance::ManualMapping;
    return std::nullopt;
}

/// A leveled interpretation statement: artwork A depicts/represents element
/// E at a given level. Qualifier relations never appear on iconological
/// recognitions. The annotation field preserves secondary notes such as a
/// story being an allegory.
struct Recognition {
    Iri artwork;
    Iri element;
    InterpretationLevel level;
    std::vector<QualifierRelation> qualifier_relations;
    Provenance provenance = Provenance::SourceKG;
    std::optional<std::string> annotation;

    /// Identity for deduplication.
    std::tuple<const Iri&, const Iri&, const InterpretationLevel&> key() const {
        return {artwork, element, level};
    }

    auto operator<=>(const Recognition&) const = default;
};

inline void sort_unique_qualifiers(std::vector<QualifierRelation>& quals) {
    std::sort(quals.begin(), quals.end());
    quals.erase(std::unique(quals.begin(), quals.end()), quals.end());
}

/// Collapse duplicate (artwork, element, level) entries. Qualifier sets are
/// unioned, the provenance of the merged record is the highest-trust source
/// present, and the first non-empty annotation wins. Output is sorted by
/// key, so the function is deterministic and idempotent.
inline std::vector<Recognition> dedupe_recognitions(const std::vector<Recognition>& recs) {
    std::map<std::tuple<Iri, Iri, InterpretationLevel>, Recognition> merged;
    for (const auto& rec : recs) {
        auto key = std::make_tuple(rec.artwork, rec.element, rec.level);
        auto it = merged.find(key);
        if (it == merged.end()) {
            Recognition copy = rec;
            sort_unique_qualifiers(copy.qualifier_relations);
            if (copy.level.level == Level::Iconological) copy.qualifier_relations.clear();
            merged.emplace(std::move(key), std::move(copy));
            continue;
        }
        Recognition& dst = it->second;
        if (rec.level.level != Level::Iconological) {
            dst.qualifier_relations.insert(dst.qualifier_relations.end(),
                                           rec.qualifier_relations.begin(),
                                           rec.qualifier_relations.end());
            sort_unique_qualifiers(dst.qualifier_relations);
        }
        if (trust_rank(rec.provenance) > trust_rank(dst.provenance))
            dst.provenance = rec.provenance;
        if (!dst.annotation && rec.annotation) dst.annotation = rec.annotation;
    }
    std::vector<Recognition> out;
    out.reserve(merged.size());
    for (auto& [key, rec] : merged) out.push_back(std::move(rec));
    return out;
}

} // namespace iiconforge
