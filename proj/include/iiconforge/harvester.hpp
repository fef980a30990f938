#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"
#include "iiconforge/rdf.hpp"
#include "iiconforge/text.hpp"

namespace iiconforge {

/// One raw depiction row: artwork A depicts element E, with the element's
/// declared types and any qualifiers the source attached to the statement.
struct DepictsQualifier {
    RelationKind kind = RelationKind::Other;
    std::string raw_kind; // source spelling, kept for Other
    std::string value;
    bool value_is_iri = false;

    auto operator<=>(const DepictsQualifier&) const = default;
};

struct DepictsStatement {
    Iri artwork;
    std::string artwork_label;
    Iri element;
    std::string element_label;
    std::set<Iri> element_types;
    std::vector<DepictsQualifier> qualifiers;

    auto operator<=>(const DepictsStatement&) const = default;
};

/// Map a source qualifier-kind spelling onto the recognized relation kinds.
inline RelationKind classify_qualifier_kind(std::string_view raw) {
    std::string norm = text::normalize_label(raw);
    if (norm == "wears") return RelationKind::Wears;
    if (norm == "symbolizes") return RelationKind::Symbolizes;
    if (norm == "expression/gesture/pose" || norm == "expression_gesture_or_pose" ||
        norm == "expression, gesture, or body pose" || norm == "expressiongestureorpose")
        return RelationKind::ExpressionGestureOrPose;
    return RelationKind::Other;
}

struct EndpointConfig {
    std::string endpoint_url;
    size_t page_size = 500;
    size_t max_retries = 3;
    std::chrono::milliseconds request_timeout{30000};
    std::string user_agent = "iiconforge/1.0";
    std::chrono::milliseconds backoff_initial{100};
};

class EndpointUnreachable : public Error {
public:
    explicit EndpointUnreachable(const std::string& detail)
        : Error("endpoint unreachable after retries: " + detail) {}
};

class MalformedResponse : public Error {
public:
    MalformedResponse(size_t page, const std::string& reason)
        : Error("malformed response on page " + std::to_string(page) + ": " + reason),
          page_(page) {}
    size_t page() const { return page_; }

private:
    size_t page_;
};

class QueryRejected : public Error {
public:
    QueryRejected(int status, const std::string& body)
        : Error("query rejected with status " + std::to_string(status) +
                (body.empty() ? "" : ": " + body.substr(0, 200))) {}
};

class MalformedRow : public InputError {
public:
    MalformedRow(size_t line, const std::string& reason)
        : InputError("malformed row at line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

class UnknownFormat : public InputError {
public:
    explicit UnknownFormat(const std::string& what) : InputError("unknown format: " + what) {}
};

enum class DumpFormat { Tsv, NTriplesSubset };

/// Record vocabulary for the N-Triples depicts encoding. One record node
/// per statement; qualifier predicates carry the kind in their last path
/// segment.
struct DepictsVocab {
    static constexpr std::string_view artwork = "https://w3id.org/iiconforge/record#artwork";
    static constexpr std::string_view artwork_label = "https://w3id.org/iiconforge/record#artworkLabel";
    static constexpr std::string_view element = "https://w3id.org/iiconforge/record#element";
    static constexpr std::string_view element_label = "https://w3id.org/iiconforge/record#elementLabel";
    static constexpr std::string_view element_type = "https://w3id.org/iiconforge/record#elementType";
    static constexpr std::string_view qualifier_base = "https://w3id.org/iiconforge/record/qualifier/";
};

namespace detail {

inline const char* kDepictsTsvHeader =
    "artwork_iri\tartwork_label\telement_iri\telement_label\ttype_iris\tqualifier_kind\tqualifier_value";

struct TsvDepictsRow {
    DepictsStatement stmt; // qualifiers holds at most one entry here
};

inline TsvDepictsRow parse_depicts_tsv_row(const std::string& line, size_t line_no) {
    auto cells = text::split(line, '\t');
    if (cells.size() != 7)
        throw MalformedRow(line_no, "expected 7 columns, got " + std::to_string(cells.size()));
    TsvDepictsRow row;
    if (!Iri::is_valid(cells[0]))
        throw MalformedRow(line_no, "artwork IRI invalid: '" + cells[0] + "'");
    if (!Iri::is_valid(cells[2]))
        throw MalformedRow(line_no, "element IRI invalid: '" + cells[2] + "'");
    row.stmt.artwork = Iri(cells[0]);
    row.stmt.artwork_label = text::tsv_unescape(cells[1]);
    row.stmt.element = Iri(cells[2]);
    row.stmt.element_label = text::tsv_unescape(cells[3]);
    if (!cells[4].empty()) {
        for (const auto& t : text::split(cells[4], '|')) {
            if (!Iri::is_valid(t)) throw MalformedRow(line_no, "type IRI invalid: '" + t + "'");
            row.stmt.element_types.insert(Iri(t));
        }
    }
    if (!cells[5].empty()) {
        DepictsQualifier q;
        q.raw_kind = cells[5];
        q.kind = classify_qualifier_kind(cells[5]);
        q.value = text::tsv_unescape(cells[6]);
        q.value_is_iri = Iri::is_valid(q.value);
        row.stmt.qualifiers.push_back(std::move(q));
    } else if (!cells[6].empty()) {
        throw MalformedRow(line_no, "qualifier value without kind");
    }
    return row;
}

} // namespace detail

/// Lazy reader over a depicts dump. Rows (TSV) or triples (N-Triples) that
/// belong to one logical statement must be contiguous; next() touches only
/// the lines needed for the statement it returns.
class DepictsDumpReader {
public:
    DepictsDumpReader(const std::string& path, DumpFormat format)
        : in_(path, std::ios::binary), format_(format), path_(path) {
        if (!in_) throw InputError("cannot open dump: " + path);
        if (format_ == DumpFormat::Tsv) {
            std::string header;
            if (!read_line(header)) throw MalformedRow(1, "missing header row");
            if (header != detail::kDepictsTsvHeader)
                throw MalformedRow(1, "unexpected header: '" + header + "'");
        }
    }

    std::optional<DepictsStatement> next() {
        return format_ == DumpFormat::Tsv ? next_tsv() : next_ntriples();
    }

    std::vector<DepictsStatement> read_all() {
        std::vector<DepictsStatement> out;
        while (auto stmt = next()) out.push_back(std::move(*stmt));
        return out;
    }

    /// Number of raw lines consumed so far (laziness probe for tests).
    size_t lines_read() const { return line_no_; }

private:
    bool read_line(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    std::optional<DepictsStatement> next_tsv() {
        if (!pending_) {
            std::string line;
            while (read_line(line)) {
                if (line.empty()) continue;
                pending_ = detail::parse_depicts_tsv_row(line, line_no_).stmt;
                break;
            }
            if (!pending_) return std::nullopt;
        }
        DepictsStatement current = std::move(*pending_);
        pending_.reset();
        std::string line;
        while (read_line(line)) {
            if (line.empty()) continue;
            DepictsStatement row = detail::parse_depicts_tsv_row(line, line_no_).stmt;
            if (row.artwork == current.artwork && row.element == current.element) {
                current.element_types.insert(row.element_types.begin(), row.element_types.end());
                for (auto& q : row.qualifiers) current.qualifiers.push_back(std::move(q));
                continue;
            }
            pending_ = std::move(row);
            break;
        }
        return current;
    }

    std::optional<DepictsStatement> next_ntriples() {
        // Record node IRI groups the triples of one statement.
        std::string record_subject;
        std::optional<DepictsStatement> current;
        auto apply = [&](const Triple& t) {
            if (!current) {
                current.emplace();
                record_subject = t.subject;
            }
            DepictsStatement& s = *current;
            const std::string& p = t.predicate;
            if (p == DepictsVocab::artwork && t.object.is_iri()) {
                s.artwork = Iri(t.object.value);
            } else if (p == DepictsVocab::element && t.object.is_iri()) {
                s.element = Iri(t.object.value);
            } else if (p == DepictsVocab::artwork_label) {
                s.artwork_label = t.object.value;
            } else if (p == DepictsVocab::element_label) {
                s.element_label = t.object.value;
            } else if (p == DepictsVocab::element_type && t.object.is_iri()) {
                s.element_types.insert(Iri(t.object.value));
            } else if (text::starts_with(p, DepictsVocab::qualifier_base)) {
                DepictsQualifier q;
                q.raw_kind = p.substr(DepictsVocab::qualifier_base.size());
                q.kind = classify_qualifier_kind(q.raw_kind);
                q.value = t.object.value;
                q.value_is_iri = t.object.is_iri();
                s.qualifiers.push_back(std::move(q));
            }
        };

        if (pending_triple_) {
            apply(*pending_triple_);
            pending_triple_.reset();
        }
        std::string line;
        while (read_line(line)) {
            auto t = rdf::parse_ntriples_line(line, line_no_);
            if (!t) continue;
            if (current && t->subject != record_subject) {
                pending_triple_ = std::move(t);
                break;
            }
            apply(*t);
        }
        if (!current) return std::nullopt;
        if (current->artwork.empty())
            throw MalformedRow(line_no_, "record <" + record_subject + "> lacks an artwork");
        if (current->element.empty())
            throw MalformedRow(line_no_, "record <" + record_subject + "> lacks an element");
        return current;
    }

    std::ifstream in_;
    DumpFormat format_;
    std::string path_;
    size_t line_no_ = 0;
    std::optional<DepictsStatement> pending_;
    std::optional<Triple> pending_triple_;
};

/// Eager convenience wrapper over DepictsDumpReader.
inline std::vector<DepictsStatement> read_depicts_dump(const std::string& path, DumpFormat format) {
    DepictsDumpReader reader(path, format);
    return reader.read_all();
}

/// Write statements as the TSV dump format (one row per qualifier; one bare
/// row for qualifier-free statements). read_depicts_dump inverts this.
inline void write_depicts_dump(const std::vector<DepictsStatement>& stmts, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << detail::kDepictsTsvHeader << '\n';
    for (const auto& s : stmts) {
        std::string types;
        for (const auto& t : s.element_types) {
            if (!types.empty()) types += '|';
            types += t.str();
        }
        std::string key_cells = s.artwork.str() + '\t' + text::tsv_escape(s.artwork_label) + '\t' +
                                s.element.str() + '\t' + text::tsv_escape(s.element_label) + '\t' +
                                types;
        if (s.qualifiers.empty()) {
            out << key_cells << "\t\t\n";
        } else {
            for (const auto& q : s.qualifiers)
                out << key_cells << '\t' << (q.raw_kind.empty() ? std::string(to_tag(q.kind)) : q.raw_kind)
                    << '\t' << text::tsv_escape(q.value) << '\n';
        }
    }
    if (!out.flush()) throw IoFailure(path);
}

/// Record-node N-Triples encoding of the same statements.
inline std::vector<Triple> depicts_to_triples(const std::vector<DepictsStatement>& stmts) {
    std::vector<Triple> out;
    size_t n = 0;
    for (const auto& s : stmts) {
        // Zero-padded so lexicographic line order keeps records contiguous
        // and in statement order after canonical serialization.
        char buf[16];
        std::snprintf(buf, sizeof buf, "r%08zu", n++);
        std::string rec = "https://w3id.org/iiconforge/record/" + std::string(buf);
        out.push_back({rec, std::string(DepictsVocab::artwork), RdfTerm::iri(s.artwork.str())});
        if (!s.artwork_label.empty())
            out.push_back({rec, std::string(DepictsVocab::artwork_label), RdfTerm::literal(s.artwork_label)});
        out.push_back({rec, std::string(DepictsVocab::element), RdfTerm::iri(s.element.str())});
        if (!s.element_label.empty())
            out.push_back({rec, std::string(DepictsVocab::element_label), RdfTerm::literal(s.element_label)});
        for (const auto& t : s.element_types)
            out.push_back({rec, std::string(DepictsVocab::element_type), RdfTerm::iri(t.str())});
        for (const auto& q : s.qualifiers) {
            std::string pred = std::string(DepictsVocab::qualifier_base) +
                               (q.raw_kind.empty() ? std::string(to_tag(q.kind)) : q.raw_kind);
            out.push_back({rec, pred, q.value_is_iri ? RdfTerm::iri(q.value) : RdfTerm::literal(q.value)});
        }
    }
    return out;
}

} // namespace iiconforge
