#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/harvester.hpp"
#include "iiconforge/model.hpp"

namespace iiconforge {

/// Namespace all minted nodes live under.
inline constexpr std::string_view kIigNamespace = "https://w3id.org/iicongraph/data/";
inline constexpr std::string_view kIigPrefix = "iig";

/// Deterministic node id for a text-only element: same normalized label,
/// same id, which is what makes subject intra-linking work across artworks.
inline Iri mint_element_id(std::string_view label, std::string_view ns = kIigNamespace) {
    std::string local = text::mint_camel_case(text::normalize_label(label));
    if (local.empty()) throw InputError("cannot mint an element id from label '" + std::string(label) + "'");
    return Iri(std::string(ns) + "element/" + local);
}

class DuplicateTypeError : public InputError {
public:
    explicit DuplicateTypeError(const std::string& type_iri)
        : InputError("type mapped twice with different classes: " + type_iri) {}
};

class AmbiguousPriorityError : public InputError {
public:
    AmbiguousPriorityError(int priority, const std::string& a, const std::string& b)
        : InputError("priority " + std::to_string(priority) + " is shared by rows mapping to '" +
                     a + "' and '" + b + "'") {}
};

class UnknownIconClass : public InputError {
public:
    UnknownIconClass(size_t row, const std::string& what)
        : InputError("unknown ICON class at row " + std::to_string(row) + ": " + what) {}
};

/// User-supplied mapping from source type IRIs to ICON classes. Lower
/// priority numbers win when an element carries several mapped types; a
/// priority value never maps to two different classes, which keeps the
/// tie-break total.
struct AlignmentTable {
    struct Mapping {
        InterpretationLevel level;
        int priority = 0;
    };
    std::map<Iri, Mapping> rows;
    std::string coverage_note;
};

/// Load the alignment CSV: type_iri,icon_level,icon_subclass,priority
/// (header row required). Identical duplicate rows are tolerated.
inline AlignmentTable load_alignment(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open alignment file: " + path);

    AlignmentTable table;
    std::map<int, InterpretationLevel> priority_class;
    std::string line;
    size_t row_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, ',');
        if (cells.size() != 4)
            throw InputError("alignment row " + std::to_string(row_no) + ": expected 4 columns, got " +
                             std::to_string(cells.size()));
        std::string type_cell = text::trim(cells[0]);
        if (!Iri::is_valid(type_cell))
            throw InputError("alignment row " + std::to_string(row_no) + ": invalid type IRI '" +
                             type_cell + "'");
        Iri type(type_cell);

        auto level = parse_level_tag(text::normalize_label(cells[1]));
        auto subclass = parse_subclass_tag(text::normalize_label(cells[2]));
        if (!level || !subclass || level_of(*subclass) != *level)
            throw UnknownIconClass(row_no, text::trim(cells[1]) + "/" + text::trim(cells[2]));

        int priority = 0;
        try {
            priority = std::stoi(text::trim(cells[3]));
        } catch (const std::exception&) {
            throw InputError("alignment row " + std::to_string(row_no) + ": bad priority '" +
                             text::trim(cells[3]) + "'");
        }

        AlignmentTable::Mapping mapping{InterpretationLevel(*level, *subclass), priority};
        auto existing = table.rows.find(type);
        if (existing != table.rows.end()) {
            if (existing->second.level != mapping.level || existing->second.priority != mapping.priority)
                throw DuplicateTypeError(type.str());
            continue;
        }
        auto prio_it = priority_class.find(priority);
        if (prio_it != priority_class.end() && prio_it->second != mapping.level)
            throw AmbiguousPriorityError(priority, prio_it->second.tag(), mapping.level.tag());
        priority_class.emplace(priority, mapping.level);
        table.rows.emplace(std::move(type), mapping);
    }
    if (!header_seen) throw InputError("alignment file is empty: " + path);
    return table;
}

enum class AssignmentStatus { Assigned, Unassigned, Conflict };

struct AssignmentOutcome {
    Iri element;
    std::optional<InterpretationLevel> assigned;
    std::optional<Iri> matched_type;
    AssignmentStatus status = AssignmentStatus::Unassigned;
};

/// Pick the ICON class for one statement: among the element's types present
/// in the table, the lowest priority number wins. Equal-priority hits on
/// different classes flag Conflict, which a table accepted by
/// load_alignment cannot produce.
inline AssignmentOutcome assign_icon_class(const DepictsStatement& stmt, const AlignmentTable& table) {
    AssignmentOutcome out;
    out.element = stmt.element;

    const AlignmentTable::Mapping* best = nullptr;
    const Iri* best_type = nullptr;
    bool conflict = false;
    for (const auto& type : stmt.element_types) {
        auto it = table.rows.find(type);
        if (it == table.rows.end()) continue;
        if (!best || it->second.priority < best->priority) {
            best = &it->second;
            best_type = &it->first;
            conflict = false;
        } else if (it->second.priority == best->priority) {
            if (it->second.level != best->level) conflict = true;
            // same class at the same priority: keep the lexicographically
            // first matched type (set iteration order already gives it)
        }
    }
    if (!best) {
        out.status = AssignmentStatus::Unassigned;
        return out;
    }
    if (conflict) {
        out.status = AssignmentStatus::Conflict;
        return out;
    }
    out.status = AssignmentStatus::Assigned;
    out.assigned = best->level;
    out.matched_type = *best_type;
    return out;
}

struct UnassignedEntry {
    Iri element;
    std::set<std::string> labels;
    std::set<Iri> type_iris;
    size_t occurrence_count = 0;
};

struct UnassignedReport {
    std::vector<UnassignedEntry> entries; // sorted by count desc, then IRI
    size_t total_occurrences = 0;
};

struct BuildResult {
    std::vector<Recognition> recognitions;
    std::map<Iri, DepictedElement> elements; // every node the output references
    std::map<Iri, std::string> artwork_labels;
    UnassignedReport unassigned;
    size_t statement_count = 0;
    size_t assigned_count = 0;
    size_t conflict_count = 0;
};

namespace detail {

inline void note_element(std::map<Iri, DepictedElement>& elements, const Iri& id,
                         const std::string& label, const std::set<Iri>* types = nullptr) {
    auto [it, inserted] = elements.try_emplace(id);
    DepictedElement& el = it->second;
    if (inserted) el.id = id;
    if (el.label.empty()) el.label = !label.empty() ? label : id.local_name();
    if (types) el.type_ids.insert(types->begin(), types->end());
}

} // namespace detail

/// Re-engineer raw depicts statements into leveled recognitions.
///
/// Qualifier handling: wears maps to a Wears relation (and the worn item
/// gets its own recognition when its IRI is itself a table row);
/// expression/gesture/pose maps to its relation plus a pre-iconographic
/// Expression recognition for the qualifier value; symbolizes is recorded
/// verbatim. Unassigned statements are reported, never dropped silently.
inline BuildResult build_recognitions(const std::vector<DepictsStatement>& stmts,
                                      const AlignmentTable& table) {
    BuildResult result;
    result.statement_count = stmts.size();
    std::map<Iri, UnassignedEntry> unassigned;

    for (const auto& stmt : stmts) {
        if (!stmt.artwork_label.empty())
            result.artwork_labels.try_emplace(stmt.artwork, stmt.artwork_label);

        AssignmentOutcome outcome = assign_icon_class(stmt, table);
        if (outcome.status != AssignmentStatus::Assigned) {
            if (outcome.status == AssignmentStatus::Conflict) ++result.conflict_count;
            auto& entry = unassigned[stmt.element];
            entry.element = stmt.element;
            if (!stmt.element_label.empty()) entry.labels.insert(stmt.element_label);
            entry.type_iris.insert(stmt.element_types.begin(), stmt.element_types.end());
            ++entry.occurrence_count;
            ++result.unassigned.total_occurrences;
            continue;
        }
        ++result.assigned_count;
        detail::note_element(result.elements, stmt.element, stmt.element_label, &stmt.element_types);

        Recognition rec;
        rec.artwork = stmt.artwork;
        rec.element = stmt.element;
        rec.level = *outcome.assigned;
        rec.provenance = Provenance::ManualMapping;

        for (const auto& q : stmt.qualifiers) {
            if (rec.level.level != Level::Iconological)
                rec.qualifier_relations.push_back({q.kind, q.value, q.value_is_iri});

            if (q.kind == RelationKind::Wears && q.value_is_iri) {
                Iri worn(q.value);
                auto row = table.rows.find(worn);
                if (row != table.rows.end()) {
                    detail::note_element(result.elements, worn, "");
                    Recognition worn_rec;
                    worn_rec.artwork = stmt.artwork;
                    worn_rec.element = worn;
                    worn_rec.level = row->second.level;
                    worn_rec.provenance = Provenance::ManualMapping;
                    result.recognitions.push_back(std::move(worn_rec));
                }
            } else if (q.kind == RelationKind::ExpressionGestureOrPose && !q.value.empty()) {
                Iri expr_el = q.value_is_iri ? Iri(q.value) : mint_element_id(q.value);
                detail::note_element(result.elements, expr_el, q.value_is_iri ? "" : q.value);
                Recognition expr_rec;
                expr_rec.artwork = stmt.artwork;
                expr_rec.element = expr_el;
                expr_rec.level = InterpretationLevel(Subclass::Expression);
                expr_rec.provenance = Provenance::SourceKG;
                result.recognitions.push_back(std::move(expr_rec));
            }
        }
        result.recognitions.push_back(std::move(rec));
    }

    result.recognitions = dedupe_recognitions(result.recognitions);

    result.unassigned.entries.reserve(unassigned.size());
    for (auto& [iri, entry] : unassigned) result.unassigned.entries.push_back(std::move(entry));
    std::sort(result.unassigned.entries.begin(), result.unassigned.entries.end(),
              [](const UnassignedEntry& a, const UnassignedEntry& b) {
                  if (a.occurrence_count != b.occurrence_count)
                      return a.occurrence_count > b.occurrence_count;
                  return a.element < b.element;
              });
    return result;
}

/// TSV report of everything the table could not place.
inline void write_unassigned_report(const UnassignedReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << "element_iri\tlabels\ttype_iris\toccurrence_count\n";
    for (const auto& e : report.entries) {
        std::string labels, types;
        for (const auto& l : e.labels) {
            if (!labels.empty()) labels += '|';
            labels += text::tsv_escape(l);
        }
        for (const auto& t : e.type_iris) {
            if (!types.empty()) types += '|';
            types += t.str();
        }
        out << e.element.str() << '\t' << labels << '\t' << types << '\t' << e.occurrence_count << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

} // namespace iiconforge
