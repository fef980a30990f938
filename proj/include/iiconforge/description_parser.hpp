#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iiconforge/alignment.hpp"
#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"
#include "iiconforge/text.hpp"

namespace iiconforge {

struct ParserConfig {
    /// Everything before this marker is catalog prose and is ignored.
    std::string reading_marker = "Iconographic Reading:";
    /// Category whose content carries subject-matter meanings.
    std::string iconological_category = "Product category/type of event";
    /// Meaning phrases too generic to mint (compared normalized).
    std::vector<std::string> meaning_blocklist;
};

enum class DiscardReason {
    NoReadingMarker,
    NoCategoryHeader,
    UnlabeledSegment,
    EmptyCategoryHeader,
    EmptyCategoryContent,
};

inline std::string_view to_tag(DiscardReason r) {
    switch (r) {
        case DiscardReason::NoReadingMarker: return "no-reading-marker";
        case DiscardReason::NoCategoryHeader: return "no-category-header";
        case DiscardReason::UnlabeledSegment: return "unlabeled-segment";
        case DiscardReason::EmptyCategoryHeader: return "empty-category-header";
        case DiscardReason::EmptyCategoryContent: return "empty-category-content";
    }
    return "unknown";
}

class EmptyPhrase : public InputError {
public:
    EmptyPhrase() : InputError("meaning phrase has no alphanumeric content") {}
};

struct Category {
    std::string name;
    std::string content;
};

struct MintedMeaning {
    std::string phrase; // trimmed surface form
    Iri id;

    bool operator==(const MintedMeaning& o) const { return phrase == o.phrase && id == o.id; }
};

struct ParsedDescription {
    Iri artwork;
    bool conforming = false;
    std::optional<DiscardReason> reason;
    std::vector<Category> segments;       // as segmented, order preserved
    std::vector<std::string> pre_tokens;  // ordered, deduped
    std::vector<std::string> icon_tokens; // ordered, deduped
    std::vector<MintedMeaning> meanings;
    std::vector<std::string> warnings;
};

/// Substring after the reading marker, or nothing when the marker is absent.
inline std::optional<std::string> extract_reading(std::string_view description,
                                                  std::string_view marker) {
    auto pos = description.find(marker);
    if (pos == std::string_view::npos) return std::nullopt;
    return std::string(text::trim(description.substr(pos + marker.size())));
}

namespace detail {

struct SegmentResult {
    std::vector<Category> categories;
    std::optional<DiscardReason> discard;
    std::vector<std::string> warnings;
};

} // namespace detail

/// Carve the reading into named categories. "." terminates the open
/// category; ";" starts a new one only when a "header:" follows, otherwise
/// it stays inside the content (iconological phrases are ";"-separated).
/// A headerless fragment is tolerated with a warning only at the very end.
inline detail::SegmentResult segment_categories(std::string_view reading) {
    detail::SegmentResult out;
    Category* open = nullptr;

    auto sentences = text::split(reading, '.');
    for (size_t si = 0; si < sentences.size(); ++si) {
        auto chunks = text::split(sentences[si], ';');
        for (size_t ci = 0; ci < chunks.size(); ++ci) {
            std::string chunk = text::trim(chunks[ci]);
            if (chunk.empty()) continue;
            auto colon = chunk.find(':');
            if (colon != std::string::npos) {
                std::string header = text::trim(chunk.substr(0, colon));
                std::string rest = text::trim(chunk.substr(colon + 1));
                if (header.empty()) {
                    out.discard = DiscardReason::EmptyCategoryHeader;
                    return out;
                }
                out.categories.push_back({std::move(header), std::move(rest)});
                open = &out.categories.back();
            } else if (open) {
                if (!open->content.empty()) open->content += "; ";
                open->content += std::string(chunk);
            } else {
                bool last = si + 1 == sentences.size() && ci + 1 == chunks.size();
                if (last) {
                    out.warnings.push_back("trailing fragment dropped: " + std::string(chunk));
                } else {
                    out.discard = DiscardReason::UnlabeledSegment;
                    return out;
                }
            }
        }
        open = nullptr; // "." closes the category
    }

    for (const auto& cat : out.categories) {
        if (text::trim(cat.content).empty()) {
            out.discard = DiscardReason::EmptyCategoryContent;
            return out;
        }
    }
    if (out.categories.empty() && !out.discard) out.discard = DiscardReason::NoCategoryHeader;
    return out;
}

/// Split category content into depiction tokens and sort each into the
/// pre-iconographic or iconographic bucket by its first alphabetic
/// character: names are capitalized, generic things are not.
inline void classify_tokens(std::string_view content, std::vector<std::string>& pre_tokens,
                            std::vector<std::string>& icon_tokens) {
    std::string lowered_sep(content);
    // lowercase " and " also separates tokens; do a targeted replace so the
    // token text itself keeps its case
    size_t pos = 0;
    while ((pos = lowered_sep.find(" and ", pos)) != std::string::npos) {
        lowered_sep.replace(pos, 5, " , ");
        pos += 3;
    }

    std::set<std::string> seen;
    for (auto piece : text::split(lowered_sep, ',')) {
        std::string token(text::trim(piece));
        if (token.empty()) continue;
        char first = 0;
        for (char c : token) {
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
                first = c;
                break;
            }
        }
        if (first == 0) continue;
        std::string norm = text::normalize_label(token);
        if (!seen.insert(norm).second) continue;
        if (first >= 'A' && first <= 'Z')
            icon_tokens.push_back(token);
        else
            pre_tokens.push_back(token);
    }
}

inline Iri mint_meaning_id(std::string_view phrase, std::string_view ns = kIigNamespace) {
    std::string local = text::mint_camel_case(text::normalize_label(phrase));
    if (local.empty()) throw EmptyPhrase();
    return Iri(std::string(ns) + "meaning/" + local);
}

/// Pull ";"-separated meaning phrases out of the configured category.
inline std::vector<MintedMeaning> extract_iconological(const Category& cat, const ParserConfig& cfg) {
    std::vector<MintedMeaning> out;
    if (text::normalize_label(cat.name) != text::normalize_label(cfg.iconological_category))
        return out;

    std::set<std::string> blocked;
    for (const auto& b : cfg.meaning_blocklist) blocked.insert(text::normalize_label(b));

    std::set<std::string> seen;
    for (auto piece : text::split(cat.content, ';')) {
        std::string phrase(text::trim(piece));
        if (phrase.empty()) continue;
        std::string norm = text::normalize_label(phrase);
        if (blocked.count(norm)) continue;
        if (!seen.insert(norm).second) continue;
        out.push_back({phrase, mint_meaning_id(phrase)});
    }
    return out;
}

inline ParsedDescription parse_description(const Iri& artwork, std::string_view description,
                                           const ParserConfig& cfg = {}) {
    ParsedDescription out;
    out.artwork = artwork;

    auto reading = extract_reading(description, cfg.reading_marker);
    if (!reading) {
        out.reason = DiscardReason::NoReadingMarker;
        return out;
    }
    auto seg = segment_categories(*reading);
    out.warnings = std::move(seg.warnings);
    if (seg.discard) {
        out.reason = seg.discard;
        return out;
    }
    out.segments = seg.categories;

    std::string icon_cat_norm = text::normalize_label(cfg.iconological_category);
    for (const auto& cat : seg.categories) {
        if (text::normalize_label(cat.name) == icon_cat_norm) {
            auto meanings = extract_iconological(cat, cfg);
            out.meanings.insert(out.meanings.end(), meanings.begin(), meanings.end());
        } else {
            classify_tokens(cat.content, out.pre_tokens, out.icon_tokens);
        }
    }
    out.conforming = true;
    return out;
}

/// Turn a conforming parse into recognitions: tokens carry the macro level
/// only (free text supports no finer call), meanings become iconological
/// records whose annotation keeps the surface phrase.
inline std::vector<Recognition> recognitions_from_parse(const ParsedDescription& parsed,
                                                        std::map<Iri, DepictedElement>* elements = nullptr) {
    std::vector<Recognition> out;
    if (!parsed.conforming) return out;

    auto add_token = [&](const std::string& token, Level level) {
        Iri el = mint_element_id(token);
        if (elements) detail::note_element(*elements, el, token);
        Recognition rec;
        rec.artwork = parsed.artwork;
        rec.element = el;
        rec.level = InterpretationLevel(level);
        rec.provenance = Provenance::ParserHeuristic;
        out.push_back(std::move(rec));
    };
    for (const auto& t : parsed.pre_tokens) add_token(t, Level::PreIconographic);
    for (const auto& t : parsed.icon_tokens) add_token(t, Level::Iconographic);

    for (const auto& m : parsed.meanings) {
        if (elements) detail::note_element(*elements, m.id, m.phrase);
        Recognition rec;
        rec.artwork = parsed.artwork;
        rec.element = m.id;
        rec.level = InterpretationLevel(Level::Iconological);
        rec.provenance = Provenance::ParserHeuristic;
        rec.annotation = m.phrase;
        out.push_back(std::move(rec));
    }
    return dedupe_recognitions(out);
}

struct DescriptionRow {
    Iri artwork;
    std::string description;
};

inline constexpr std::string_view kDescriptionTsvHeader = "artwork_iri\tdescription";

/// Read the two-column description dump (TSV, header required).
inline std::vector<DescriptionRow> read_description_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open description file: " + path);
    std::vector<DescriptionRow> rows;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kDescriptionTsvHeader)
                throw InputError("description file " + path + ": unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, '\t');
        if (cells.size() != 2)
            throw InputError("description file " + path + " line " + std::to_string(line_no) +
                             ": expected 2 columns, got " + std::to_string(cells.size()));
        std::string art(text::trim(cells[0]));
        if (!Iri::is_valid(art))
            throw InputError("description file " + path + " line " + std::to_string(line_no) +
                             ": invalid artwork IRI '" + art + "'");
        rows.push_back({Iri(art), text::tsv_unescape(cells[1])});
    }
    // a fully empty file means an empty corpus, not an error
    return rows;
}

struct CorpusParseResult {
    std::vector<ParsedDescription> parsed; // input order, conforming and not
    size_t conforming_count = 0;
    size_t discarded_count = 0;
};

inline CorpusParseResult parse_corpus(const std::vector<DescriptionRow>& rows,
                                      const ParserConfig& cfg = {}) {
    CorpusParseResult out;
    out.parsed.reserve(rows.size());
    for (const auto& row : rows) {
        out.parsed.push_back(parse_description(row.artwork, row.description, cfg));
        if (out.parsed.back().conforming)
            ++out.conforming_count;
        else
            ++out.discarded_count;
    }
    return out;
}

/// TSV of discarded descriptions and why, in input order.
inline void write_discard_report(const CorpusParseResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << "artwork_iri\treason\n";
    for (const auto& p : result.parsed) {
        if (p.conforming) continue;
        out << p.artwork.str() << '\t' << to_tag(*p.reason) << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

} // namespace iiconforge
