#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "iiconforge/description_parser.hpp"
#include "iiconforge/enricher.hpp"
#include "iiconforge/model.hpp"

namespace iiconforge {

inline uint64_t choose2(uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Index key: meanings are compared per context only when asked, otherwise
/// the context field stays empty and contexts collapse.
struct MeaningKey {
    Iri meaning;
    std::string context;

    auto tied() const { return std::tie(meaning, context); }
    bool operator<(const MeaningKey& o) const { return tied() < o.tied(); }
    bool operator==(const MeaningKey& o) const { return tied() == o.tied(); }
};

/// Per meaning: each artwork's set of symbols conveying it there.
using MeaningIndex = std::map<MeaningKey, std::map<Iri, std::set<Iri>>>;

inline MeaningIndex build_meaning_index(const std::vector<Interpretation>& interps,
                                        bool same_context = false) {
    MeaningIndex index;
    for (const auto& i : interps) {
        MeaningKey key{i.meaning, same_context ? i.context : std::string()};
        index[key][i.artwork].insert(i.symbol);
    }
    return index;
}

struct SerendipityOptions {
    bool same_context = false; // consumed by build_meaning_index callers
    uint64_t pair_cap = 1'000'000; // distinct-pair materialization guard
    size_t listing_cap = 100;
    unsigned jobs = 1;
};

struct SerendipitousPair {
    Iri artwork_a; // always the lexicographically smaller one
    Iri artwork_b;
    Iri meaning;
    std::string context;
};

struct MeaningBreakdown {
    Iri meaning;
    std::string context;
    size_t artwork_count = 0;
    uint64_t pair_count = 0;
};

struct SerendipityResult {
    /// Sum over meanings of serendipitous pairs (a pair conveying two
    /// meanings counts twice here).
    uint64_t pair_meaning_count = 0;
    /// Unordered artwork pairs counted once. Exact only when the instance
    /// fit under pair_cap; otherwise the count stops at the cap.
    uint64_t distinct_pair_count = 0;
    bool distinct_exact = true;
    uint64_t pair_cap = 0;
    std::vector<MeaningBreakdown> per_meaning; // pair count desc, then key
    std::vector<SerendipitousPair> listing;    // first pairs in scan order
};

/// Pair (A,B) is non-serendipitous for m exactly when both symbol sets are
/// the same singleton; everything else admits two different symbols.
inline bool pair_serendipitous(const std::set<Iri>& a, const std::set<Iri>& b) {
    return !(a.size() == 1 && b.size() == 1 && *a.begin() == *b.begin());
}

/// Closed-form connection counting. The per-meaning count never enumerates
/// pairs: C(k,2) minus one collision term per singleton symbol. Pair
/// materialization only serves distinct_pair_count and the listing, and
/// stops at the cap. Per-meaning sums can be striped across jobs; the
/// reduction is associative so the stripe count never changes the result.
inline SerendipityResult count_serendipity(const MeaningIndex& index,
                                           const SerendipityOptions& opts = {}) {
    SerendipityResult out;
    out.pair_cap = opts.pair_cap;

    std::vector<const MeaningIndex::value_type*> entries;
    entries.reserve(index.size());
    for (const auto& e : index) entries.push_back(&e);

    std::vector<uint64_t> counts(entries.size(), 0);
    auto closed_form = [&](size_t i) {
        const auto& artworks = entries[i]->second;
        std::map<Iri, uint64_t> singleton_of;
        for (const auto& [artwork, symbols] : artworks)
            if (symbols.size() == 1) ++singleton_of[*symbols.begin()];
        uint64_t pairs = choose2(artworks.size());
        for (const auto& [sym, q] : singleton_of) pairs -= choose2(q);
        counts[i] = pairs;
    };

    unsigned jobs = std::min<unsigned>(std::max(1u, opts.jobs), 64);
    if (jobs == 1 || entries.size() < 2) {
        for (size_t i = 0; i < entries.size(); ++i) closed_form(i);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (unsigned lane = 0; lane < jobs; ++lane)
            threads.emplace_back([&, lane]() {
                for (size_t i = lane; i < entries.size(); i += jobs) closed_form(i);
            });
        for (auto& t : threads) t.join();
    }

    for (size_t i = 0; i < entries.size(); ++i) {
        if (counts[i] == 0) continue;
        out.pair_meaning_count += counts[i];
        out.per_meaning.push_back({entries[i]->first.meaning, entries[i]->first.context,
                                   entries[i]->second.size(), counts[i]});
    }
    std::sort(out.per_meaning.begin(), out.per_meaning.end(),
              [](const MeaningBreakdown& a, const MeaningBreakdown& b) {
                  if (a.pair_count != b.pair_count) return a.pair_count > b.pair_count;
                  return MeaningKey{a.meaning, a.context} < MeaningKey{b.meaning, b.context};
              });

    std::set<std::pair<Iri, Iri>> distinct;
    for (const auto* entry : entries) {
        const auto& artworks = entry->second;
        for (auto a = artworks.begin(); a != artworks.end() && out.distinct_exact; ++a) {
            for (auto b = std::next(a); b != artworks.end(); ++b) {
                if (!pair_serendipitous(a->second, b->second)) continue;
                auto pair = std::make_pair(a->first, b->first);
                if (distinct.size() >= opts.pair_cap && !distinct.count(pair)) {
                    out.distinct_exact = false;
                    break;
                }
                distinct.insert(pair);
                if (out.listing.size() < opts.listing_cap)
                    out.listing.push_back({a->first, b->first, entry->first.meaning,
                                           entry->first.context});
            }
        }
        if (!out.distinct_exact) break;
    }
    out.distinct_pair_count = distinct.size();
    return out;
}

/// O(n² · m) oracle: enumerate every artwork pair against every meaning.
inline std::pair<uint64_t, uint64_t> brute_force_serendipity(const MeaningIndex& index) {
    std::set<Iri> artworks;
    for (const auto& [key, per_artwork] : index)
        for (const auto& [artwork, symbols] : per_artwork) artworks.insert(artwork);

    uint64_t pair_meaning = 0;
    uint64_t distinct = 0;
    for (auto a = artworks.begin(); a != artworks.end(); ++a) {
        for (auto b = std::next(a); b != artworks.end(); ++b) {
            bool connected = false;
            for (const auto& [key, per_artwork] : index) {
                auto sa = per_artwork.find(*a);
                auto sb = per_artwork.find(*b);
                if (sa == per_artwork.end() || sb == per_artwork.end()) continue;
                bool hit = false;
                for (const auto& s : sa->second) {
                    for (const auto& t : sb->second) {
                        if (s != t) {
                            hit = true;
                            break;
                        }
                    }
                    if (hit) break;
                }
                if (hit) {
                    ++pair_meaning;
                    connected = true;
                }
            }
            if (connected) ++distinct;
        }
    }
    return {pair_meaning, distinct};
}

struct SymbolicRank {
    Iri artwork;
    std::string label;
    size_t simulation_count = 0; // distinct (symbol, meaning, context)
};

/// Artworks by distinct simulation count, descending, IRI ties ascending.
inline std::vector<SymbolicRank> rank_symbolic(const std::vector<Interpretation>& interps,
                                               const std::map<Iri, std::string>& artwork_labels,
                                               size_t top_k = 10) {
    if (top_k == 0) throw InputError("rank_symbolic: top_k must be at least 1");
    std::map<Iri, std::set<std::tuple<Iri, Iri, std::string>>> distinct;
    for (const auto& i : interps)
        distinct[i.artwork].insert(std::make_tuple(i.symbol, i.meaning, i.context));

    std::vector<SymbolicRank> out;
    out.reserve(distinct.size());
    for (const auto& [artwork, sims] : distinct) {
        auto label = artwork_labels.find(artwork);
        out.push_back({artwork, label != artwork_labels.end() ? label->second : std::string(),
                       sims.size()});
    }
    std::sort(out.begin(), out.end(), [](const SymbolicRank& a, const SymbolicRank& b) {
        if (a.simulation_count != b.simulation_count)
            return a.simulation_count > b.simulation_count;
        return a.artwork < b.artwork;
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

struct LevelRow {
    Level level;
    std::optional<Subclass> subclass; // absent rows aggregate the level
    uint64_t total = 0;
    uint64_t unique = 0;
};

/// Streaming level tally. Totals count recognition instances; unique counts
/// distinct elements.
class LevelDistribution {
public:
    void add(const Recognition& rec) {
        ++level_totals_[rec.level.level];
        level_elements_[rec.level.level].insert(rec.element);
        if (rec.level.subclass) {
            ++subclass_totals_[*rec.level.subclass];
            subclass_elements_[*rec.level.subclass].insert(rec.element);
        }
    }

    /// Replay pre-aggregated totals (no element identities available).
    void add_totals(uint64_t pre, uint64_t icon, uint64_t iconolog = 0) {
        level_totals_[Level::PreIconographic] += pre;
        level_totals_[Level::Iconographic] += icon;
        level_totals_[Level::Iconological] += iconolog;
    }

    void add_subclass_totals(Subclass sc, uint64_t total, uint64_t unique) {
        subclass_totals_[sc] += total;
        replayed_unique_[sc] += unique;
    }

    uint64_t level_total(Level level) const { return value(level_totals_, level); }
    uint64_t subclass_total(Subclass sc) const { return value(subclass_totals_, sc); }

    uint64_t subclass_unique(Subclass sc) const {
        uint64_t n = value(replayed_unique_, sc);
        auto it = subclass_elements_.find(sc);
        if (it != subclass_elements_.end()) n += it->second.size();
        return n;
    }

    /// Share of the two depiction levels held by pre-iconographic records.
    double preiconographic_share() const {
        uint64_t pre = level_total(Level::PreIconographic);
        uint64_t icon = level_total(Level::Iconographic);
        if (pre + icon == 0) return 0.0;
        return static_cast<double>(pre) / static_cast<double>(pre + icon);
    }

    std::vector<LevelRow> rows() const {
        std::vector<LevelRow> out;
        for (Level level : {Level::PreIconographic, Level::Iconographic, Level::Iconological}) {
            LevelRow row{level, std::nullopt, level_total(level), 0};
            auto els = level_elements_.find(level);
            if (els != level_elements_.end()) row.unique = els->second.size();
            out.push_back(row);
            for (Subclass sc : kAllSubclasses) {
                if (level_of(sc) != level) continue;
                uint64_t total = subclass_total(sc);
                uint64_t unique = subclass_unique(sc);
                if (total == 0 && unique == 0) continue;
                out.push_back({level, sc, total, unique});
            }
        }
        return out;
    }

private:
    template <class M, class K>
    static uint64_t value(const M& m, K key) {
        auto it = m.find(key);
        return it == m.end() ? 0 : it->second;
    }

    std::map<Level, uint64_t> level_totals_;
    std::map<Level, std::set<Iri>> level_elements_;
    std::map<Subclass, uint64_t> subclass_totals_;
    std::map<Subclass, std::set<Iri>> subclass_elements_;
    std::map<Subclass, uint64_t> replayed_unique_;
};

struct MeaningFrequency {
    Iri meaning;
    std::string label; // surface phrase when one is known
    size_t artwork_count = 0;
};

namespace detail {

inline std::vector<MeaningFrequency> frequency_from(
    std::map<Iri, std::set<Iri>>&& artworks_of, std::map<Iri, std::string>&& label_of,
    size_t top_k) {
    std::vector<MeaningFrequency> out;
    out.reserve(artworks_of.size());
    for (const auto& [meaning, artworks] : artworks_of) {
        auto label = label_of.find(meaning);
        out.push_back({meaning, label != label_of.end() ? label->second : std::string(),
                       artworks.size()});
    }
    std::sort(out.begin(), out.end(), [](const MeaningFrequency& a, const MeaningFrequency& b) {
        if (a.artwork_count != b.artwork_count) return a.artwork_count > b.artwork_count;
        return a.meaning < b.meaning;
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

} // namespace detail

/// Distinct artworks per minted meaning, straight from parser output.
inline std::vector<MeaningFrequency> meaning_frequency(const std::vector<ParsedDescription>& parsed,
                                                       size_t top_k = 10) {
    std::map<Iri, std::set<Iri>> artworks_of;
    std::map<Iri, std::string> label_of;
    for (const auto& p : parsed) {
        if (!p.conforming) continue;
        for (const auto& m : p.meanings) {
            artworks_of[m.id].insert(p.artwork);
            label_of.try_emplace(m.id, m.phrase);
        }
    }
    return detail::frequency_from(std::move(artworks_of), std::move(label_of), top_k);
}

/// Same count over iconological recognition records.
inline std::vector<MeaningFrequency> meaning_frequency(const std::vector<Recognition>& recognitions,
                                                       size_t top_k = 10) {
    std::map<Iri, std::set<Iri>> artworks_of;
    std::map<Iri, std::string> label_of;
    for (const auto& rec : recognitions) {
        if (rec.level.level != Level::Iconological) continue;
        artworks_of[rec.element].insert(rec.artwork);
        if (rec.annotation && !rec.annotation->empty())
            label_of.try_emplace(rec.element, *rec.annotation);
    }
    return detail::frequency_from(std::move(artworks_of), std::move(label_of), top_k);
}

} // namespace iiconforge
