#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"
#include "iiconforge/text.hpp"

namespace iiconforge {

class ScoreOutOfRange : public InputError {
public:
    ScoreOutOfRange(const std::string& name, double value)
        : InputError("score " + name + " = " + std::to_string(value) + " is outside [0,1]") {}
};

class MismatchedArtworkSets : public InputError {
public:
    MismatchedArtworkSets() : InputError("annotators cover different artwork sets") {}
};

class NoSubjects : public InputError {
public:
    NoSubjects() : InputError("subject link map is empty") {}
};

/// Six criterion scores in [0,1]. cr1/cr4/cr6 are ingested constants;
/// cr2/cr3/cr5 can be recomputed from annotation sheets, the capability
/// manifest, and subject links respectively.
struct CriterionScores {
    double cr1 = 0, cr2 = 0, cr3 = 0, cr4 = 0, cr5 = 0, cr6 = 0;

    void validate() const {
        const std::pair<const char*, double> all[] = {{"cr1", cr1}, {"cr2", cr2}, {"cr3", cr3},
                                                      {"cr4", cr4}, {"cr5", cr5}, {"cr6", cr6}};
        for (const auto& [name, v] : all)
            if (!(v >= 0.0 && v <= 1.0)) throw ScoreOutOfRange(name, v);
    }
};

/// The nine golden-standard modeling capabilities behind CR3.
struct CapabilityManifest {
    bool actions = false;
    bool preiconographical_elements = false;
    bool stories = false;
    bool allegories = false;
    bool iconographical_subjects = false;
    bool symbols = false;
    bool iconological_subjects = false;
    bool cultural_phenomena = false;
    bool taxonomy_combination = false;

    int count_true() const {
        const bool flags[] = {actions,  preiconographical_elements, stories,
                              allegories, iconographical_subjects,  symbols,
                              iconological_subjects, cultural_phenomena, taxonomy_combination};
        int n = 0;
        for (bool f : flags) n += f ? 1 : 0;
        return n;
    }
};

struct AnnotationSheet {
    std::string annotator;
    std::map<Iri, double> scores; // per artwork, each in [0,1]
};

/// Mean over annotators of each annotator's mean artwork score.
inline double score_cr2(const std::vector<AnnotationSheet>& sheets) {
    if (sheets.empty()) throw InputError("score_cr2 needs at least one annotator");
    std::set<Iri> reference;
    for (const auto& [artwork, score] : sheets.front().scores) reference.insert(artwork);
    if (reference.empty()) throw InputError("annotation sheet has no artworks");

    double sum_of_means = 0.0;
    for (const auto& sheet : sheets) {
        std::set<Iri> artworks;
        double sum = 0.0;
        for (const auto& [artwork, score] : sheet.scores) {
            if (!(score >= 0.0 && score <= 1.0)) throw ScoreOutOfRange("annotation", score);
            artworks.insert(artwork);
            sum += score;
        }
        if (artworks != reference) throw MismatchedArtworkSets();
        sum_of_means += sum / static_cast<double>(sheet.scores.size());
    }
    return sum_of_means / static_cast<double>(sheets.size());
}

inline double score_cr3(const CapabilityManifest& manifest) {
    return static_cast<double>(manifest.count_true()) / 9.0;
}

/// Fraction of subjects linked to two or more artworks.
inline double score_cr5(const std::map<Iri, std::set<Iri>>& subject_links) {
    if (subject_links.empty()) throw NoSubjects();
    size_t linked = 0;
    for (const auto& [subject, artworks] : subject_links)
        if (artworks.size() >= 2) ++linked;
    return static_cast<double>(linked) / static_cast<double>(subject_links.size());
}

struct Aggregates {
    double content = 0, structure = 0, overall = 0;
};

/// Content averages the two content criteria; structure is the weighted
/// mean with weights 1, 0.6, 0.6, 0.8 over cr3..cr6 (weight sum 3);
/// overall averages the two aggregates.
inline Aggregates aggregate(const CriterionScores& s) {
    s.validate();
    Aggregates out;
    out.content = (s.cr1 + s.cr2) / 2.0;
    out.structure = (1.0 * s.cr3 + 0.6 * s.cr4 + 0.6 * s.cr5 + 0.8 * s.cr6) / 3.0;
    out.overall = (out.content + out.structure) / 2.0;
    return out;
}

struct ScoreRow {
    std::string kg_name;
    CriterionScores scores;
    std::string computed_flags; // which criteria were recomputed, "|"-joined
};

struct ReportRow {
    std::string kg_name;
    CriterionScores scores;
    Aggregates aggregates;
    int rank_content = 0;
    int rank_structure = 0;
    int rank_overall = 0;
};

struct EvaluationReport {
    std::vector<ReportRow> rows; // input order preserved
};

namespace detail {

/// Dense rank, descending: rank = 1 + count of distinct strictly greater
/// values. Equal values share a rank and no rank is skipped after a tie.
inline std::vector<int> dense_ranks(const std::vector<double>& values) {
    std::set<double, std::greater<double>> distinct(values.begin(), values.end());
    std::map<double, int> rank_of;
    int rank = 1;
    for (double v : distinct) rank_of[v] = rank++;
    std::vector<int> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(rank_of[v]);
    return out;
}

inline std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s.empty() ? "0" : s;
}

} // namespace detail

inline EvaluationReport build_report(const std::vector<ScoreRow>& rows) {
    if (rows.empty()) throw InputError("build_report needs at least one row");
    EvaluationReport report;
    std::vector<double> content, structure, overall;
    for (const auto& row : rows) {
        ReportRow out;
        out.kg_name = row.kg_name;
        out.scores = row.scores;
        out.aggregates = aggregate(row.scores);
        content.push_back(out.aggregates.content);
        structure.push_back(out.aggregates.structure);
        overall.push_back(out.aggregates.overall);
        report.rows.push_back(std::move(out));
    }
    auto rc = detail::dense_ranks(content);
    auto rs = detail::dense_ranks(structure);
    auto ro = detail::dense_ranks(overall);
    for (size_t i = 0; i < report.rows.size(); ++i) {
        report.rows[i].rank_content = rc[i];
        report.rows[i].rank_structure = rs[i];
        report.rows[i].rank_overall = ro[i];
    }
    return report;
}

/// Scores CSV: kg_name,cr1,cr2,cr3,cr4,cr5,cr6,computed_flags (header
/// required; computed_flags may be empty).
inline std::vector<ScoreRow> read_scores_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open scores file: " + path);
    std::vector<ScoreRow> rows;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, ',');
        if (cells.size() != 7 && cells.size() != 8)
            throw InputError("scores file " + path + " line " + std::to_string(line_no) +
                             ": expected 7 or 8 columns, got " + std::to_string(cells.size()));
        ScoreRow row;
        row.kg_name = std::string(text::trim(cells[0]));
        if (row.kg_name.empty())
            throw InputError("scores file " + path + " line " + std::to_string(line_no) +
                             ": empty kg name");
        double* slots[6] = {&row.scores.cr1, &row.scores.cr2, &row.scores.cr3,
                            &row.scores.cr4, &row.scores.cr5, &row.scores.cr6};
        for (int i = 0; i < 6; ++i) {
            try {
                *slots[i] = std::stod(std::string(text::trim(cells[static_cast<size_t>(i) + 1])));
            } catch (const std::exception&) {
                throw InputError("scores file " + path + " line " + std::to_string(line_no) +
                                 ": bad number '" + std::string(cells[static_cast<size_t>(i) + 1]) + "'");
            }
        }
        row.scores.validate();
        if (cells.size() == 8) row.computed_flags = std::string(text::trim(cells[7]));
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw InputError("scores file is empty: " + path);
    return rows;
}

/// Annotation CSV: annotator,artwork_iri,score (header required). Rows are
/// grouped into one sheet per annotator, first-appearance order.
inline std::vector<AnnotationSheet> read_annotations_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open annotations file: " + path);
    std::vector<AnnotationSheet> sheets;
    std::map<std::string, size_t> index_of;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, ',');
        if (cells.size() != 3)
            throw InputError("annotations file " + path + " line " + std::to_string(line_no) +
                             ": expected 3 columns, got " + std::to_string(cells.size()));
        std::string annotator(text::trim(cells[0]));
        std::string artwork(text::trim(cells[1]));
        if (!Iri::is_valid(artwork))
            throw InputError("annotations file " + path + " line " + std::to_string(line_no) +
                             ": invalid artwork IRI '" + artwork + "'");
        double score = 0;
        try {
            score = std::stod(std::string(text::trim(cells[2])));
        } catch (const std::exception&) {
            throw InputError("annotations file " + path + " line " + std::to_string(line_no) +
                             ": bad score '" + std::string(cells[2]) + "'");
        }
        if (!(score >= 0.0 && score <= 1.0)) throw ScoreOutOfRange("annotation", score);
        auto [it, inserted] = index_of.try_emplace(annotator, sheets.size());
        if (inserted) sheets.push_back({annotator, {}});
        sheets[it->second].scores[Iri(artwork)] = score;
    }
    if (!header_seen) throw InputError("annotations file is empty: " + path);
    return sheets;
}

inline void write_report_csv(const EvaluationReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << "kg_name,cr1,cr2,cr3,cr4,cr5,cr6,content,structure,overall,"
           "rank_content,rank_structure,rank_overall\n";
    for (const auto& row : report.rows) {
        out << row.kg_name << ',' << detail::format_score(row.scores.cr1) << ','
            << detail::format_score(row.scores.cr2) << ',' << detail::format_score(row.scores.cr3)
            << ',' << detail::format_score(row.scores.cr4) << ','
            << detail::format_score(row.scores.cr5) << ',' << detail::format_score(row.scores.cr6)
            << ',' << detail::format_score(row.aggregates.content) << ','
            << detail::format_score(row.aggregates.structure) << ','
            << detail::format_score(row.aggregates.overall) << ',' << row.rank_content << ','
            << row.rank_structure << ',' << row.rank_overall << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

/// Plain aligned table for terminal output.
inline std::string format_report_table(const EvaluationReport& report) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"kg_name", "content", "structure", "overall", "rank"});
    for (const auto& row : report.rows)
        grid.push_back({row.kg_name, detail::format_score(row.aggregates.content),
                        detail::format_score(row.aggregates.structure),
                        detail::format_score(row.aggregates.overall),
                        std::to_string(row.rank_overall)});

    std::vector<size_t> width(grid[0].size(), 0);
    for (const auto& row : grid)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    std::string out;
    for (const auto& row : grid) {
        for (size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out.append(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

} // namespace iiconforge
