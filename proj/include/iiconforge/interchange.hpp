#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iiconforge/description_parser.hpp"
#include "iiconforge/errors.hpp"
#include "iiconforge/model.hpp"

namespace iiconforge {

/// Staged artifacts between pipeline commands. JSON lines keep a stable
/// field order so reruns are byte-identical.

inline void write_recognitions_jsonl(const std::vector<Recognition>& recs,
                                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    for (const auto& rec : recs) {
        nlohmann::ordered_json row;
        row["artwork"] = rec.artwork.str();
        row["element"] = rec.element.str();
        row["level"] = rec.level.tag();
        nlohmann::ordered_json quals = nlohmann::ordered_json::array();
        for (const auto& q : rec.qualifier_relations) {
            nlohmann::ordered_json qj;
            qj["kind"] = std::string(to_tag(q.kind));
            qj["target"] = q.target;
            qj["is_iri"] = q.target_is_iri;
            quals.push_back(std::move(qj));
        }
        row["qualifiers"] = std::move(quals);
        row["provenance"] = std::string(to_tag(rec.provenance));
        if (rec.annotation) row["annotation"] = *rec.annotation;
        out << row.dump() << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

inline std::vector<Recognition> read_recognitions_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open recognitions file: " + path);
    std::vector<Recognition> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("recognitions file " + path + " line " + std::to_string(line_no) +
                             ": " + e.what());
        }
        try {
            Recognition rec;
            rec.artwork = Iri(row.at("artwork").get<std::string>());
            rec.element = Iri(row.at("element").get<std::string>());
            auto level = InterpretationLevel::parse(row.at("level").get<std::string>());
            if (!level) throw InputError("bad level tag");
            rec.level = *level;
            for (const auto& qj : row.at("qualifiers")) {
                auto kind = parse_relation_kind(qj.at("kind").get<std::string>());
                if (!kind) throw InputError("bad qualifier kind");
                rec.qualifier_relations.push_back(
                    {*kind, qj.at("target").get<std::string>(), qj.at("is_iri").get<bool>()});
            }
            auto prov = parse_provenance(row.at("provenance").get<std::string>());
            if (!prov) throw InputError("bad provenance tag");
            rec.provenance = *prov;
            if (row.contains("annotation")) rec.annotation = row["annotation"].get<std::string>();
            out.push_back(std::move(rec));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("recognitions file " + path + " line " + std::to_string(line_no) +
                             ": " + e.what());
        }
    }
    return out;
}

inline constexpr std::string_view kElementsTsvHeader = "element_iri\tlabel\ttype_iris";

inline void write_elements_tsv(const std::map<Iri, DepictedElement>& elements,
                               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << kElementsTsvHeader << '\n';
    for (const auto& [id, el] : elements) {
        std::string types;
        for (const auto& t : el.type_ids) {
            if (!types.empty()) types += '|';
            types += t.str();
        }
        out << id.str() << '\t' << text::tsv_escape(el.label) << '\t' << types << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

inline std::map<Iri, DepictedElement> read_elements_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open elements file: " + path);
    std::map<Iri, DepictedElement> out;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kElementsTsvHeader)
                throw InputError("elements file " + path + ": unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, '\t');
        if (cells.size() != 3)
            throw InputError("elements file " + path + " line " + std::to_string(line_no) +
                             ": expected 3 columns, got " + std::to_string(cells.size()));
        DepictedElement el;
        el.id = Iri(std::string(text::trim(cells[0])));
        el.label = text::tsv_unescape(cells[1]);
        for (auto t : text::split(cells[2], '|')) {
            auto trimmed = text::trim(t);
            if (!trimmed.empty()) el.type_ids.insert(Iri(std::string(trimmed)));
        }
        out.emplace(el.id, std::move(el));
    }
    if (!header_seen) throw InputError("elements file is empty: " + path);
    return out;
}

inline constexpr std::string_view kArtworkLabelsTsvHeader = "artwork_iri\tlabel";

inline void write_artwork_labels_tsv(const std::map<Iri, std::string>& labels,
                                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    out << kArtworkLabelsTsvHeader << '\n';
    for (const auto& [artwork, label] : labels)
        out << artwork.str() << '\t' << text::tsv_escape(label) << '\n';
    if (!out.flush()) throw IoFailure(path);
}

inline std::map<Iri, std::string> read_artwork_labels_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open artwork labels file: " + path);
    std::map<Iri, std::string> out;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kArtworkLabelsTsvHeader)
                throw InputError("artwork labels file " + path + ": unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto cells = text::split(line, '\t');
        if (cells.size() != 2)
            throw InputError("artwork labels file " + path + " line " + std::to_string(line_no) +
                             ": expected 2 columns");
        out.emplace(Iri(std::string(text::trim(cells[0]))), text::tsv_unescape(cells[1]));
    }
    if (!header_seen) throw InputError("artwork labels file is empty: " + path);
    return out;
}

inline void write_parsed_jsonl(const std::vector<ParsedDescription>& parsed,
                               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path);
    for (const auto& p : parsed) {
        nlohmann::ordered_json row;
        row["artwork"] = p.artwork.str();
        row["conforming"] = p.conforming;
        if (!p.conforming) row["reason"] = std::string(to_tag(*p.reason));
        nlohmann::ordered_json segments = nlohmann::ordered_json::array();
        for (const auto& seg : p.segments) {
            nlohmann::ordered_json sj;
            sj["category"] = seg.name;
            sj["content"] = seg.content;
            segments.push_back(std::move(sj));
        }
        row["segments"] = std::move(segments);
        row["pre"] = p.pre_tokens;
        row["icon"] = p.icon_tokens;
        nlohmann::ordered_json meanings = nlohmann::ordered_json::array();
        for (const auto& m : p.meanings) {
            nlohmann::ordered_json mj;
            mj["phrase"] = m.phrase;
            mj["id"] = m.id.str();
            meanings.push_back(std::move(mj));
        }
        row["meanings"] = std::move(meanings);
        row["warnings"] = p.warnings;
        out << row.dump() << '\n';
    }
    if (!out.flush()) throw IoFailure(path);
}

inline std::vector<ParsedDescription> read_parsed_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open parsed file: " + path);
    std::vector<ParsedDescription> out;
    std::string line;
    size_t line_no = 0;
    auto parse_reason = [](const std::string& tag) -> DiscardReason {
        for (DiscardReason r : {DiscardReason::NoReadingMarker, DiscardReason::NoCategoryHeader,
                                DiscardReason::UnlabeledSegment, DiscardReason::EmptyCategoryHeader,
                                DiscardReason::EmptyCategoryContent})
            if (to_tag(r) == tag) return r;
        throw InputError("bad discard reason tag: " + tag);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        try {
            auto row = nlohmann::json::parse(line);
            ParsedDescription p;
            p.artwork = Iri(row.at("artwork").get<std::string>());
            p.conforming = row.at("conforming").get<bool>();
            if (!p.conforming) p.reason = parse_reason(row.at("reason").get<std::string>());
            for (const auto& sj : row.at("segments"))
                p.segments.push_back(
                    {sj.at("category").get<std::string>(), sj.at("content").get<std::string>()});
            p.pre_tokens = row.at("pre").get<std::vector<std::string>>();
            p.icon_tokens = row.at("icon").get<std::vector<std::string>>();
            for (const auto& mj : row.at("meanings"))
                p.meanings.push_back(
                    {mj.at("phrase").get<std::string>(), Iri(mj.at("id").get<std::string>())});
            p.warnings = row.at("warnings").get<std::vector<std::string>>();
            out.push_back(std::move(p));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("parsed file " + path + " line " + std::to_string(line_no) + ": " +
                             e.what());
        }
    }
    return out;
}

} // namespace iiconforge
