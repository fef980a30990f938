#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"

namespace iiconforge {

/// IRI or literal in object position. Literals may carry a datatype IRI or
/// a language tag (mutually exclusive).
struct RdfTerm {
    enum class Kind { IriRef, Literal };

    Kind kind = Kind::IriRef;
    std::string value;
    std::string datatype; // empty unless literal with datatype
    std::string lang;     // empty unless literal with language tag

    static RdfTerm iri(std::string v) { return {Kind::IriRef, std::move(v), "", ""}; }
    static RdfTerm literal(std::string v) { return {Kind::Literal, std::move(v), "", ""}; }
    static RdfTerm typed_literal(std::string v, std::string dt) {
        return {Kind::Literal, std::move(v), std::move(dt), ""};
    }

    bool is_iri() const { return kind == Kind::IriRef; }

    auto operator<=>(const RdfTerm&) const = default;
};

struct Triple {
    std::string subject;
    std::string predicate;
    RdfTerm object;

    auto operator<=>(const Triple&) const = default;
};

namespace rdf {

inline std::string escape_literal(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
    return out;
}

inline std::string term_to_ntriples(const RdfTerm& t) {
    if (t.is_iri()) return "<" + t.value + ">";
    std::string out = "\"" + escape_literal(t.value) + "\"";
    if (!t.datatype.empty()) out += "^^<" + t.datatype + ">";
    else if (!t.lang.empty()) out += "@" + t.lang;
    return out;
}

inline std::string to_ntriples_line(const Triple& t) {
    return "<" + t.subject + "> <" + t.predicate + "> " + term_to_ntriples(t.object) + " .";
}

/// Canonical form: distinct triples, one per line, sorted lexicographically
/// by their serialized N-Triples line. Deterministic for any input order.
inline std::vector<std::string> canonical_lines(const std::vector<Triple>& triples) {
    std::vector<std::string> lines;
    lines.reserve(triples.size());
    for (const auto& t : triples) lines.push_back(to_ntriples_line(t));
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    return lines;
}

// ---------------------------------------------------------------------------
// N-Triples subset parser: IRIs and literals only, no blank nodes.
// ---------------------------------------------------------------------------

class NTriplesParseError : public InputError {
public:
    NTriplesParseError(size_t line, const std::string& reason)
        : InputError("n-triples parse error at line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

namespace detail {

inline void skip_ws(std::string_view s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline std::string append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

inline std::string parse_iri_ref(std::string_view s, size_t& i, size_t line_no) {
    if (i >= s.size() || s[i] != '<') throw NTriplesParseError(line_no, "expected '<'");
    size_t end = s.find('>', i + 1);
    if (end == std::string_view::npos) throw NTriplesParseError(line_no, "unterminated IRI");
    std::string iri(s.substr(i + 1, end - i - 1));
    if (!Iri::is_valid(iri)) throw NTriplesParseError(line_no, "invalid IRI '" + iri + "'");
    i = end + 1;
    return iri;
}

inline std::string parse_quoted(std::string_view s, size_t& i, size_t line_no) {
    if (i >= s.size() || s[i] != '"') throw NTriplesParseError(line_no, "expected '\"'");
    ++i;
    std::string out;
    while (i < s.size()) {
        char c = s[i];
        if (c == '"') {
            ++i;
            return out;
        }
        if (c == '\\') {
            if (i + 1 >= s.size()) break;
            char e = s[i + 1];
            i += 2;
            switch (e) {
                case '\\': out.push_back('\\'); break;
                case '"': out.push_back('"'); break;
                case 'n': out.push_back('\n'); break;
                case 'r': out.push_back('\r'); break;
                case 't': out.push_back('\t'); break;
                case 'u':
                case 'U': {
                    size_t n = e == 'u' ? 4 : 8;
                    if (i + n > s.size()) throw NTriplesParseError(line_no, "truncated \\u escape");
                    uint32_t cp = 0;
                    for (size_t k = 0; k < n; ++k) {
                        char h = s[i + k];
                        cp <<= 4;
                        if (h >= '0' && h <= '9') cp |= static_cast<uint32_t>(h - '0');
                        else if (h >= 'a' && h <= 'f') cp |= static_cast<uint32_t>(h - 'a' + 10);
                        else if (h >= 'A' && h <= 'F') cp |= static_cast<uint32_t>(h - 'A' + 10);
                        else throw NTriplesParseError(line_no, "bad hex digit in escape");
                    }
                    i += n;
                    append_utf8(out, cp);
                    break;
                }
                default:
                    throw NTriplesParseError(line_no, std::string("unknown escape '\\") + e + "'");
            }
            continue;
        }
        out.push_back(c);
        ++i;
    }
    throw NTriplesParseError(line_no, "unterminated literal");
}

} // namespace detail

/// Parse one N-Triples line; returns nothing for blank and comment lines.
inline std::optional<Triple> parse_ntriples_line(std::string_view line, size_t line_no) {
    size_t i = 0;
    detail::skip_ws(line, i);
    if (i >= line.size() || line[i] == '#') return std::nullopt;

    Triple t;
    t.subject = detail::parse_iri_ref(line, i, line_no);
    detail::skip_ws(line, i);
    t.predicate = detail::parse_iri_ref(line, i, line_no);
    detail::skip_ws(line, i);
    if (i >= line.size()) throw NTriplesParseError(line_no, "missing object");

    if (line[i] == '<') {
        t.object = RdfTerm::iri(detail::parse_iri_ref(line, i, line_no));
    } else if (line[i] == '"') {
        RdfTerm obj;
        obj.kind = RdfTerm::Kind::Literal;
        obj.value = detail::parse_quoted(line, i, line_no);
        if (i + 1 < line.size() && line[i] == '^' && line[i + 1] == '^') {
            i += 2;
            obj.datatype = detail::parse_iri_ref(line, i, line_no);
        } else if (i < line.size() && line[i] == '@') {
            ++i;
            size_t start = i;
            while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '-'))
                ++i;
            if (i == start) throw NTriplesParseError(line_no, "empty language tag");
            obj.lang = std::string(line.substr(start, i - start));
        }
        t.object = std::move(obj);
    } else {
        throw NTriplesParseError(line_no, "blank nodes are not supported");
    }

    detail::skip_ws(line, i);
    if (i >= line.size() || line[i] != '.') throw NTriplesParseError(line_no, "missing terminating '.'");
    ++i;
    detail::skip_ws(line, i);
    if (i < line.size()) throw NTriplesParseError(line_no, "trailing content after '.'");
    return t;
}

inline std::vector<Triple> parse_ntriples(std::string_view content) {
    std::vector<Triple> out;
    size_t line_no = 0;
    size_t start = 0;
    while (start <= content.size()) {
        size_t end = content.find('\n', start);
        std::string_view line = end == std::string_view::npos
                                    ? content.substr(start)
                                    : content.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto t = parse_ntriples_line(line, line_no)) out.push_back(std::move(*t));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

inline std::vector<Triple> parse_ntriples_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open n-triples file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_ntriples(content);
}

// ---------------------------------------------------------------------------
// Turtle writer (output only; the toolkit never parses Turtle).
// ---------------------------------------------------------------------------

inline bool turtle_local_name_ok(std::string_view local) {
    if (local.empty()) return false;
    for (char c : local) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-';
        if (!ok) return false;
    }
    return !(local[0] >= '0' && local[0] <= '9');
}

inline std::string turtle_term(const RdfTerm& t, std::string_view ns, std::string_view prefix) {
    if (t.is_iri()) {
        if (text::starts_with(t.value, ns)) {
            std::string local = t.value.substr(ns.size());
            if (turtle_local_name_ok(local)) return std::string(prefix) + ":" + local;
        }
        return "<" + t.value + ">";
    }
    std::string out = "\"" + escape_literal(t.value) + "\"";
    if (!t.datatype.empty()) out += "^^<" + t.datatype + ">";
    else if (!t.lang.empty()) out += "@" + t.lang;
    return out;
}

inline std::string turtle_iri(const std::string& iri, std::string_view ns, std::string_view prefix) {
    return turtle_term(RdfTerm::iri(iri), ns, prefix);
}

} // namespace rdf
} // namespace iiconforge
