#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"
#include "iiconforge/symbol_kb.hpp"

namespace iiconforge {

enum class LinkVia { IdAlignment, LabelMatch };

inline std::string_view to_tag(LinkVia v) {
    return v == LinkVia::IdAlignment ? "id-alignment" : "label-match";
}

struct ElementLink {
    Iri element;
    Iri symbol;
    LinkVia via = LinkVia::LabelMatch;
};

struct UnmatchedElement {
    Iri element;
    std::string label;
};

struct LinkResult {
    std::map<Iri, ElementLink> links;
    std::vector<UnmatchedElement> unmatched; // sorted by element IRI
};

/// Load the element-to-symbol id alignment: element_iri,symbol_iri (header
/// row required).
inline std::map<Iri, Iri> load_id_alignment(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open id alignment file: " + path);
    std::map<Iri, Iri> out;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, ',');
        if (cells.size() != 2)
            throw InputError("id alignment " + path + " line " + std::to_string(line_no) +
                             ": expected 2 columns, got " + std::to_string(cells.size()));
        std::string el(text::trim(cells[0])), sym(text::trim(cells[1]));
        if (!Iri::is_valid(el) || !Iri::is_valid(sym))
            throw InputError("id alignment " + path + " line " + std::to_string(line_no) +
                             ": invalid IRI");
        out.insert_or_assign(Iri(el), Iri(sym));
    }
    if (!header_seen) throw InputError("id alignment file is empty: " + path);
    return out;
}

/// Bind catalog elements to KB symbols: an explicit id alignment wins,
/// exact normalized label match is the fallback, anything else lands in
/// the unmatched report. Never fuzzy.
inline LinkResult link_elements(const std::map<Iri, DepictedElement>& elements, const SymbolKb& kb,
                                const std::map<Iri, Iri>& id_alignment = {}) {
    LinkResult out;
    for (const auto& [id, el] : elements) {
        auto aligned = id_alignment.find(id);
        if (aligned != id_alignment.end()) {
            out.links.emplace(id, ElementLink{id, aligned->second, LinkVia::IdAlignment});
            continue;
        }
        // the element's own IRI may already be a KB symbol
        if (kb.by_symbol.count(id)) {
            out.links.emplace(id, ElementLink{id, id, LinkVia::IdAlignment});
            continue;
        }
        if (auto sym = match_label(el.label, kb)) {
            out.links.emplace(id, ElementLink{id, *sym, LinkVia::LabelMatch});
            continue;
        }
        out.unmatched.push_back({id, el.label});
    }
    return out;
}

inline void write_unmatched_report(const LinkResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << "element_iri\tlabel\n";
    for (const auto& e : result.unmatched)
        out << e.element.str() << '\t' << text::tsv_escape(e.label) << '\n';
    if (!out.flush()) throw IoFailure(path);
}

/// One cultural-symbolism inference: the artwork depicts a symbol that
/// conveys a meaning within a context. Contributing elements are kept for
/// the audit trail; identity is (artwork, symbol, meaning, context).
struct Interpretation {
    Iri artwork;
    Iri symbol;
    Iri meaning;
    std::string context;
    std::set<Iri> elements;

    auto key() const { return std::tie(artwork, symbol, meaning, context); }
    bool operator<(const Interpretation& o) const { return key() < o.key(); }
};

struct EnrichSummary {
    size_t recognition_count = 0;
    size_t linked_recognition_count = 0;
    size_t interpretation_count = 0;
    size_t artwork_count = 0; // artworks with at least one interpretation
    double mean_per_artwork = 0.0;
};

struct EnrichResult {
    std::vector<Interpretation> interpretations; // sorted by key
    EnrichSummary summary;
};

/// Expand linked recognitions through the KB. Iconological records are
/// skipped (a minted meaning is not a depicted symbol). Work can be striped
/// across threads; the merge is a keyed union, so the output bytes do not
/// depend on the stripe count.
inline EnrichResult enrich(const std::vector<Recognition>& recognitions, const LinkResult& links,
                           const SymbolKb& kb, unsigned jobs = 1) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, 64);

    struct Raw {
        Iri artwork, symbol, meaning;
        std::string context;
        Iri element;
    };
    std::vector<std::vector<Raw>> lanes(jobs);

    auto work = [&](unsigned lane) {
        for (size_t i = lane; i < recognitions.size(); i += jobs) {
            const Recognition& rec = recognitions[i];
            if (rec.level.level == Level::Iconological) continue;
            auto link = links.links.find(rec.element);
            if (link == links.links.end()) continue;
            auto sims = kb.by_symbol.find(link->second.symbol);
            if (sims == kb.by_symbol.end()) continue;
            for (const auto& [meaning, context] : sims->second)
                lanes[lane].push_back({rec.artwork, link->second.symbol, meaning, context, rec.element});
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (unsigned lane = 0; lane < jobs; ++lane) threads.emplace_back(work, lane);
        for (auto& t : threads) t.join();
    }

    std::map<std::tuple<Iri, Iri, Iri, std::string>, Interpretation> merged;
    size_t linked = 0;
    for (const auto& rec : recognitions) {
        if (rec.level.level == Level::Iconological) continue;
        if (links.links.count(rec.element)) ++linked;
    }
    for (const auto& lane : lanes) {
        for (const auto& raw : lane) {
            auto key = std::make_tuple(raw.artwork, raw.symbol, raw.meaning, raw.context);
            auto [it, inserted] = merged.try_emplace(key);
            if (inserted) {
                it->second.artwork = raw.artwork;
                it->second.symbol = raw.symbol;
                it->second.meaning = raw.meaning;
                it->second.context = raw.context;
            }
            it->second.elements.insert(raw.element);
        }
    }

    EnrichResult out;
    out.interpretations.reserve(merged.size());
    std::set<Iri> artworks;
    for (auto& [key, interp] : merged) {
        artworks.insert(interp.artwork);
        out.interpretations.push_back(std::move(interp));
    }
    out.summary.recognition_count = recognitions.size();
    out.summary.linked_recognition_count = linked;
    out.summary.interpretation_count = out.interpretations.size();
    out.summary.artwork_count = artworks.size();
    out.summary.mean_per_artwork =
        artworks.empty() ? 0.0
                         : static_cast<double>(out.interpretations.size()) / static_cast<double>(artworks.size());
    return out;
}

inline constexpr std::string_view kInterpretationTsvHeader =
    "artwork_iri\tsymbol_iri\tmeaning_iri\tcontext\telement_iris";

inline void write_interpretations_tsv(const std::vector<Interpretation>& interps,
                                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << kInterpretationTsvHeader << '\n';
    for (const auto& i : interps) {
        std::string els;
        for (const auto& e : i.elements) {
            if (!els.empty()) els += '|';
            els += e.str();
        }
        out << i.artwork.str() << '\t' << i.symbol.str() << '\t' << i.meaning.str() << '\t'
            << text::tsv_escape(i.context) << '\t' << els << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

inline std::vector<Interpretation> read_interpretations_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open interpretations file: " + path);
    std::vector<Interpretation> out;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kInterpretationTsvHeader)
                throw InputError("interpretations file " + path + ": unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, '\t');
        if (cells.size() != 5)
            throw InputError("interpretations file " + path + " line " + std::to_string(line_no) +
                             ": expected 5 columns, got " + std::to_string(cells.size()));
        Interpretation interp;
        interp.artwork = Iri(std::string(text::trim(cells[0])));
        interp.symbol = Iri(std::string(text::trim(cells[1])));
        interp.meaning = Iri(std::string(text::trim(cells[2])));
        interp.context = text::tsv_unescape(cells[3]);
        for (auto el : text::split(cells[4], '|')) {
            auto trimmed = text::trim(el);
            if (!trimmed.empty()) interp.elements.insert(Iri(std::string(trimmed)));
        }
        out.push_back(std::move(interp));
    }
    if (!header_seen) throw InputError("interpretations file is empty: " + path);
    return out;
}

} // namespace iiconforge
