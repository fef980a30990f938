#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"
#include "iiconforge/rdf.hpp"
#include "iiconforge/text.hpp"

namespace iiconforge {

/// One unit of the symbolism knowledge base: symbol S stands for meaning M
/// from the point of view of cultural context C.
struct Simulation {
    Iri symbol;
    Iri meaning;
    std::string context; // IRI or plain tag, kept verbatim

    auto operator<=>(const Simulation&) const = default;
};

class MalformedRecord : public InputError {
public:
    MalformedRecord(size_t line, const std::string& reason)
        : InputError("malformed record at line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

class EmptyKbError : public InputError {
public:
    EmptyKbError() : InputError("symbolism KB loaded zero simulations") {}
};

struct KbLoadSummary {
    size_t record_count = 0;    // distinct simulations kept
    size_t duplicate_count = 0; // input rows dropped as exact duplicates
    size_t label_count = 0;     // label rows kept (primary + aliases)
};

/// Predicate IRIs used when the KB is loaded from triples. Defaults follow
/// the Simulation Ontology layout but every predicate is swappable.
struct KbPredicates {
    std::string simulacrum = "https://w3id.org/simulation/ontology/hasSimulacrum";
    std::string reality_counterpart = "https://w3id.org/simulation/ontology/hasRealityCounterpart";
    std::string context = "https://w3id.org/simulation/ontology/hasContext";
    std::string label = "http://www.w3.org/2000/01/rdf-schema#label";
};

/// Frozen, index-consistent view of the symbolism KB. Built once by
/// load_kb / KbBuilder, then shared read-only.
struct SymbolKb {
    std::set<Simulation> simulations;
    std::map<Iri, std::set<std::pair<Iri, std::string>>> by_symbol;  // symbol -> (meaning, ctx)
    std::map<Iri, std::set<std::pair<Iri, std::string>>> by_meaning; // meaning -> (symbol, ctx)
    std::map<std::string, Iri> labels; // normalized label -> symbol

    bool empty() const { return simulations.empty(); }
    size_t size() const { return simulations.size(); }
};

class KbBuilder {
public:
    /// Returns false when the simulation was already present.
    bool add(Simulation sim) {
        auto [it, inserted] = kb_.simulations.insert(std::move(sim));
        if (!inserted) {
            ++summary_.duplicate_count;
            return false;
        }
        kb_.by_symbol[it->symbol].emplace(it->meaning, it->context);
        kb_.by_meaning[it->meaning].emplace(it->symbol, it->context);
        return true;
    }

    /// First mapping for a normalized label wins; later conflicting aliases
    /// are ignored so loads stay order-independent per file.
    void add_label(std::string_view label, const Iri& symbol) {
        std::string norm = text::normalize_label(label);
        if (norm.empty()) return;
        if (kb_.labels.emplace(std::move(norm), symbol).second) ++summary_.label_count;
    }

    std::pair<SymbolKb, KbLoadSummary> finish() {
        if (kb_.simulations.empty()) throw EmptyKbError();
        summary_.record_count = kb_.simulations.size();
        return {std::move(kb_), summary_};
    }

private:
    SymbolKb kb_;
    KbLoadSummary summary_;
};

namespace detail {

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline Iri parse_iri_cell(const std::string& cell, size_t line_no, const char* what) {
    if (!Iri::is_valid(cell))
        throw MalformedRecord(line_no, std::string(what) + " is not a valid IRI: '" + cell + "'");
    return Iri(cell);
}

} // namespace detail

/// Load simulations from a 3-column TSV (header required):
/// symbol_iri \t meaning_iri \t context_tag
inline void load_simulation_tsv(KbBuilder& builder, const std::string& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty()) throw MalformedRecord(1, "missing header row");
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        auto cells = text::split(line, '\t');
        if (cells.size() != 3)
            throw MalformedRecord(i + 1, "expected 3 columns, got " + std::to_string(cells.size()));
        Simulation sim;
        sim.symbol = detail::parse_iri_cell(cells[0], i + 1, "symbol");
        sim.meaning = detail::parse_iri_cell(cells[1], i + 1, "meaning");
        sim.context = cells[2];
        if (sim.context.empty()) throw MalformedRecord(i + 1, "empty context");
        builder.add(std::move(sim));
    }
}

/// Load label/alias rows from a 2-column TSV (header required):
/// label \t symbol_iri
inline void load_label_tsv(KbBuilder& builder, const std::string& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty()) throw MalformedRecord(1, "missing header row");
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        auto cells = text::split(line, '\t');
        if (cells.size() != 2)
            throw MalformedRecord(i + 1, "expected 2 columns, got " + std::to_string(cells.size()));
        builder.add_label(cells[0], detail::parse_iri_cell(cells[1], i + 1, "symbol"));
    }
}

/// Load simulations (and labels) from an N-Triples dump. A simulation node
/// contributes once it has both a simulacrum and a reality counterpart; a
/// missing context is stored as the empty-context tag "unspecified".
inline void load_simulation_triples(KbBuilder& builder, const std::string& path,
                                    const KbPredicates& preds = {}) {
    auto triples = rdf::parse_ntriples_file(path);

    struct Node {
        std::optional<Iri> symbol;
        std::optional<Iri> meaning;
        std::vector<std::string> contexts;
    };
    std::map<std::string, Node> nodes;
    for (const auto& t : triples) {
        if (t.predicate == preds.simulacrum && t.object.is_iri()) {
            nodes[t.subject].symbol = Iri(t.object.value);
        } else if (t.predicate == preds.reality_counterpart && t.object.is_iri()) {
            nodes[t.subject].meaning = Iri(t.object.value);
        } else if (t.predicate == preds.context) {
            nodes[t.subject].contexts.push_back(t.object.value);
        } else if (t.predicate == preds.label) {
            if (Iri::is_valid(t.subject)) builder.add_label(t.object.value, Iri(t.subject));
        }
    }
    for (const auto& [node_iri, node] : nodes) {
        if (!node.symbol || !node.meaning) continue;
        auto contexts = node.contexts;
        if (contexts.empty()) contexts.push_back("unspecified");
        for (const auto& ctx : contexts)
            builder.add(Simulation{*node.symbol, *node.meaning, ctx});
    }
}

struct KbSource {
    enum class Format { SimulationTsv, LabelTsv, Triples };
    Format format;
    std::string path;
};

/// Assemble a KB from any mix of sources. Throws EmptyKbError when zero
/// simulations load and MalformedRecord for rows with missing columns.
inline std::pair<SymbolKb, KbLoadSummary> load_kb(const std::vector<KbSource>& sources,
                                                  const KbPredicates& preds = {}) {
    KbBuilder builder;
    for (const auto& src : sources) {
        switch (src.format) {
            case KbSource::Format::SimulationTsv: load_simulation_tsv(builder, src.path); break;
            case KbSource::Format::LabelTsv: load_label_tsv(builder, src.path); break;
            case KbSource::Format::Triples: load_simulation_triples(builder, src.path, preds); break;
        }
    }
    return builder.finish();
}

/// Exact lookup of a symbol by normalized label (aliases included). Never
/// fuzzy-matches; no match is a valid outcome.
inline std::optional<Iri> match_label(std::string_view label, const SymbolKb& kb) {
    std::string norm = text::normalize_label(label);
    if (norm.empty()) return std::nullopt;
    auto it = kb.labels.find(norm);
    if (it == kb.labels.end()) return std::nullopt;
    return it->second;
}

/// Every (meaning, context) pair the KB records for a symbol; empty set for
/// unknown symbols.
inline std::set<std::pair<Iri, std::string>> meanings_of(const Iri& symbol, const SymbolKb& kb) {
    auto it = kb.by_symbol.find(symbol);
    if (it == kb.by_symbol.end()) return {};
    return it->second;
}

} // namespace iiconforge
