// iiconforge command line: harvest, convert, enrich, emit, analyze,
// evaluate, or run the whole pipeline. All outputs are deterministic for a
// fixed config, so reruns are byte-identical.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iiconforge/alignment.hpp"
#include "iiconforge/analytics.hpp"
#include "iiconforge/config.hpp"
#include "iiconforge/description_parser.hpp"
#include "iiconforge/emitter.hpp"
#include "iiconforge/enricher.hpp"
#include "iiconforge/evaluation.hpp"
#include "iiconforge/harvester.hpp"
#include "iiconforge/interchange.hpp"
#include "iiconforge/sparql.hpp"
#include "iiconforge/symbol_kb.hpp"

namespace fs = std::filesystem;
using namespace iiconforge;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::optional<unsigned> jobs;
    std::optional<uint64_t> seed;
    std::optional<size_t> top_k;
    std::optional<bool> same_context;
    std::optional<uint64_t> pair_cap;
    bool dry_run = false;
};

RunConfig make_config(const CliOverrides& cli) {
    RunConfig cfg;
    if (!cli.config_path.empty()) cfg = load_run_config(cli.config_path);
    else if (const char* env = std::getenv("IICONFORGE_ENDPOINT"); env && *env)
        cfg.endpoint_url = env;
    if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
    if (cli.jobs) cfg.jobs = *cli.jobs;
    if (cli.seed) cfg.seed = *cli.seed;
    if (cli.top_k) cfg.top_k = *cli.top_k;
    if (cli.same_context) cfg.same_context = *cli.same_context;
    if (cli.pair_cap) cfg.pair_cap = *cli.pair_cap;
    return cfg;
}

void write_json(const nlohmann::ordered_json& j, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path.string());
    out << j.dump(2) << '\n';
    if (!out.flush()) throw IoFailure(path.string());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

std::pair<SymbolKb, KbLoadSummary> load_kb_from_config(const RunConfig& cfg) {
    std::vector<KbSource> sources;
    for (const auto& p : cfg.kb_simulations) sources.push_back({KbSource::Format::SimulationTsv, p});
    for (const auto& p : cfg.kb_labels) sources.push_back({KbSource::Format::LabelTsv, p});
    for (const auto& p : cfg.kb_triples) sources.push_back({KbSource::Format::Triples, p});
    if (sources.empty()) throw ConfigError("no KB sources configured (kb_simulations/kb_labels/kb_triples)");
    return load_kb(sources);
}

VocabularyProfile profile_from_config(const RunConfig& cfg) {
    if (cfg.profile_path.empty()) return default_profile();
    require_input(cfg.profile_path, "profile_path");
    return load_profile(cfg.profile_path);
}

void validate_kb_paths(const RunConfig& cfg) {
    if (cfg.kb_simulations.empty() && cfg.kb_labels.empty() && cfg.kb_triples.empty())
        throw ConfigError("no KB sources configured (kb_simulations/kb_labels/kb_triples)");
    for (const auto& p : cfg.kb_simulations) require_input(p, "kb_simulations");
    for (const auto& p : cfg.kb_labels) require_input(p, "kb_labels");
    for (const auto& p : cfg.kb_triples) require_input(p, "kb_triples");
}

// ---- commands -----------------------------------------------------------

int cmd_harvest(const RunConfig& cfg, bool dry_run) {
    if (cfg.endpoint_url.empty())
        throw ConfigError("endpoint_url is not configured (config key or IICONFORGE_ENDPOINT)");
    require_input(cfg.query_path, "query_path");
    if (dry_run) {
        std::cout << "dry-run: harvest config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    EndpointConfig endpoint;
    endpoint.endpoint_url = cfg.endpoint_url;
    endpoint.page_size = cfg.page_size;
    endpoint.max_retries = cfg.max_retries;
    FetchResult result = fetch_depicts(endpoint, read_text_file(cfg.query_path));

    fs::path od(cfg.out_dir);
    write_depicts_dump(result.statements, (od / "depicts.tsv").string());

    nlohmann::ordered_json summary;
    summary["statement_count"] = result.statements.size();
    summary["pages_fetched"] = result.pages_fetched;
    summary["retries"] = result.retries;
    summary["retry_log"] = result.retry_log;
    write_json(summary, od / "harvest_summary.json");
    std::cout << "harvested " << result.statements.size() << " statements over "
              << result.pages_fetched << " pages\n";
    return 0;
}

int cmd_convert_wikidata(const RunConfig& cfg, bool dry_run) {
    require_input(cfg.depicts_path, "depicts_path");
    require_input(cfg.alignment_path, "alignment_path");
    if (!cfg.profile_path.empty()) require_input(cfg.profile_path, "profile_path");
    if (dry_run) {
        std::cout << "dry-run: convert-wikidata config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    DumpFormat format =
        cfg.depicts_format == "ntriples" ? DumpFormat::NTriplesSubset : DumpFormat::Tsv;
    auto statements = read_depicts_dump(cfg.depicts_path, format);
    AlignmentTable table = load_alignment(cfg.alignment_path);
    BuildResult result = build_recognitions(statements, table);

    VocabularyProfile profile = profile_from_config(cfg);
    std::vector<Triple> triples = emit_full(result.recognitions, {}, profile);

    fs::path od(cfg.out_dir);
    write_recognitions_jsonl(result.recognitions, (od / "recognitions.jsonl").string());
    write_elements_tsv(result.elements, (od / "elements.tsv").string());
    write_artwork_labels_tsv(result.artwork_labels, (od / "artwork_labels.tsv").string());
    write_unassigned_report(result.unassigned, (od / "unassigned_report.tsv").string());
    FileSummary nt = write_ntriples(triples, (od / "wikidata_full.nt").string());
    write_turtle(triples, (od / "wikidata_full.ttl").string(), profile.ns, profile.prefix);

    double coverage = result.statement_count == 0
                          ? 100.0
                          : 100.0 * static_cast<double>(result.assigned_count) /
                                static_cast<double>(result.statement_count);
    nlohmann::ordered_json summary;
    summary["statement_count"] = result.statement_count;
    summary["assigned_count"] = result.assigned_count;
    summary["unassigned_occurrences"] = result.unassigned.total_occurrences;
    summary["conflict_count"] = result.conflict_count;
    summary["coverage_percent"] = coverage;
    summary["recognition_count"] = result.recognitions.size();
    summary["alignment_rows"] = table.rows.size();
    summary["triple_count"] = nt.triple_count;
    write_json(summary, od / "convert_wikidata_summary.json");
    std::cout << "converted " << result.statement_count << " statements, coverage " << coverage
              << "%, " << nt.triple_count << " triples\n";
    return 0;
}

int cmd_convert_arco(const RunConfig& cfg, bool dry_run) {
    require_input(cfg.descriptions_path, "descriptions_path");
    if (!cfg.profile_path.empty()) require_input(cfg.profile_path, "profile_path");
    if (dry_run) {
        std::cout << "dry-run: convert-arco config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    auto rows = read_description_tsv(cfg.descriptions_path);
    CorpusParseResult parsed = parse_corpus(rows);

    std::map<Iri, DepictedElement> elements;
    std::vector<Recognition> recognitions;
    std::set<Iri> minted_meanings;
    for (const auto& p : parsed.parsed) {
        auto recs = recognitions_from_parse(p, &elements);
        recognitions.insert(recognitions.end(), recs.begin(), recs.end());
        for (const auto& m : p.meanings) minted_meanings.insert(m.id);
    }
    recognitions = dedupe_recognitions(recognitions);

    VocabularyProfile profile = profile_from_config(cfg);
    std::vector<Triple> triples = emit_shortcut(recognitions, {}, profile);

    fs::path od(cfg.out_dir);
    write_parsed_jsonl(parsed.parsed, (od / "parsed.jsonl").string());
    write_discard_report(parsed, (od / "discard_report.tsv").string());
    write_recognitions_jsonl(recognitions, (od / "recognitions.jsonl").string());
    write_elements_tsv(elements, (od / "elements.tsv").string());
    FileSummary nt = write_ntriples(triples, (od / "arco_shortcut.nt").string());
    write_turtle(triples, (od / "arco_shortcut.ttl").string(), profile.ns, profile.prefix);

    nlohmann::ordered_json summary;
    summary["row_count"] = rows.size();
    summary["conforming_count"] = parsed.conforming_count;
    summary["discarded_count"] = parsed.discarded_count;
    summary["minted_meaning_count"] = minted_meanings.size();
    summary["recognition_count"] = recognitions.size();
    summary["triple_count"] = nt.triple_count;
    write_json(summary, od / "convert_arco_summary.json");
    std::cout << "parsed " << rows.size() << " descriptions (" << parsed.conforming_count
              << " conforming), " << nt.triple_count << " triples\n";
    return 0;
}

int cmd_enrich(const RunConfig& cfg, bool dry_run) {
    validate_kb_paths(cfg);
    if (!cfg.id_alignment_path.empty()) require_input(cfg.id_alignment_path, "id_alignment_path");
    fs::path od(cfg.out_dir);
    require_input((od / "recognitions.jsonl").string(), "recognitions artifact");
    require_input((od / "elements.tsv").string(), "elements artifact");
    if (dry_run) {
        std::cout << "dry-run: enrich config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    auto [kb, kb_summary] = load_kb_from_config(cfg);
    auto recognitions = read_recognitions_jsonl((od / "recognitions.jsonl").string());
    auto elements = read_elements_tsv((od / "elements.tsv").string());

    std::map<Iri, Iri> id_alignment;
    if (!cfg.id_alignment_path.empty()) id_alignment = load_id_alignment(cfg.id_alignment_path);

    LinkResult links = link_elements(elements, kb, id_alignment);
    EnrichResult result = enrich(recognitions, links, kb, cfg.jobs);

    write_interpretations_tsv(result.interpretations, (od / "interpretations.tsv").string());
    write_unmatched_report(links, (od / "unmatched_report.tsv").string());

    nlohmann::ordered_json summary;
    summary["kb_record_count"] = kb_summary.record_count;
    summary["kb_duplicate_count"] = kb_summary.duplicate_count;
    summary["kb_label_count"] = kb_summary.label_count;
    summary["linked_element_count"] = links.links.size();
    summary["unmatched_element_count"] = links.unmatched.size();
    summary["recognition_count"] = result.summary.recognition_count;
    summary["linked_recognition_count"] = result.summary.linked_recognition_count;
    summary["interpretation_count"] = result.summary.interpretation_count;
    summary["artwork_count"] = result.summary.artwork_count;
    summary["mean_per_artwork"] = result.summary.mean_per_artwork;
    write_json(summary, od / "enrich_summary.json");
    std::cout << "enriched: " << result.summary.interpretation_count << " interpretations over "
              << result.summary.artwork_count << " artworks\n";
    return 0;
}

int cmd_emit(const RunConfig& cfg, bool dry_run) {
    fs::path od(cfg.out_dir);
    require_input((od / "recognitions.jsonl").string(), "recognitions artifact");
    if (!cfg.profile_path.empty()) require_input(cfg.profile_path, "profile_path");
    if (dry_run) {
        std::cout << "dry-run: emit config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    VocabularyProfile profile = profile_from_config(cfg);
    auto recognitions = read_recognitions_jsonl((od / "recognitions.jsonl").string());
    std::vector<Interpretation> interps;
    if (fs::exists(od / "interpretations.tsv"))
        interps = read_interpretations_tsv((od / "interpretations.tsv").string());

    auto full = emit_full(recognitions, interps, profile);
    auto shortcut = emit_shortcut(recognitions, interps, profile);

    FileSummary full_nt = write_ntriples(full, (od / "full.nt").string());
    write_turtle(full, (od / "full.ttl").string(), profile.ns, profile.prefix);
    FileSummary shortcut_nt = write_ntriples(shortcut, (od / "shortcut.nt").string());
    write_turtle(shortcut, (od / "shortcut.ttl").string(), profile.ns, profile.prefix);

    CatalogueInput cat;
    cat.timestamp = cfg.timestamp;
    if (!cfg.endpoint_url.empty() && Iri::is_valid(cfg.endpoint_url))
        cat.derived_from.push_back(Iri(cfg.endpoint_url));
    cat.files = {{"full.nt", full_nt.triple_count}, {"shortcut.nt", shortcut_nt.triple_count}};
    FileSummary cat_nt = write_ntriples(emit_catalogue(cat), (od / "catalogue.nt").string());

    nlohmann::ordered_json summary;
    summary["recognition_count"] = recognitions.size();
    summary["interpretation_count"] = interps.size();
    summary["full_triple_count"] = full_nt.triple_count;
    summary["full_byte_count"] = full_nt.byte_count;
    summary["shortcut_triple_count"] = shortcut_nt.triple_count;
    summary["shortcut_byte_count"] = shortcut_nt.byte_count;
    summary["catalogue_triple_count"] = cat_nt.triple_count;
    write_json(summary, od / "emit_summary.json");
    std::cout << "emitted " << full_nt.triple_count << " full / " << shortcut_nt.triple_count
              << " shortcut triples\n";
    return 0;
}

int cmd_analyze(const RunConfig& cfg, bool dry_run) {
    fs::path od(cfg.out_dir);
    require_input((od / "interpretations.tsv").string(), "interpretations artifact");
    if (dry_run) {
        std::cout << "dry-run: analyze config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    auto interps = read_interpretations_tsv((od / "interpretations.tsv").string());

    MeaningIndex index = build_meaning_index(interps, cfg.same_context);
    SerendipityOptions opts;
    opts.same_context = cfg.same_context;
    opts.pair_cap = cfg.pair_cap;
    opts.jobs = cfg.jobs;
    SerendipityResult serendipity = count_serendipity(index, opts);

    std::map<Iri, std::string> artwork_labels;
    if (fs::exists(od / "artwork_labels.tsv"))
        artwork_labels = read_artwork_labels_tsv((od / "artwork_labels.tsv").string());
    auto ranking = rank_symbolic(interps, artwork_labels, cfg.top_k);

    LevelDistribution levels;
    std::vector<Recognition> recognitions;
    if (fs::exists(od / "recognitions.jsonl")) {
        recognitions = read_recognitions_jsonl((od / "recognitions.jsonl").string());
        for (const auto& rec : recognitions) levels.add(rec);
    }

    std::vector<MeaningFrequency> frequencies;
    if (fs::exists(od / "parsed.jsonl"))
        frequencies = meaning_frequency(read_parsed_jsonl((od / "parsed.jsonl").string()), cfg.top_k);
    else if (!recognitions.empty())
        frequencies = meaning_frequency(recognitions, cfg.top_k);

    {
        std::ofstream out(od / "top_symbolic.tsv", std::ios::binary);
        if (!out) throw IoFailure((od / "top_symbolic.tsv").string());
        out << "artwork_iri\tlabel\tsimulation_count\n";
        for (const auto& row : ranking)
            out << row.artwork.str() << '\t' << text::tsv_escape(row.label) << '\t'
                << row.simulation_count << '\n';
    }
    {
        std::ofstream out(od / "meaning_frequency.tsv", std::ios::binary);
        if (!out) throw IoFailure((od / "meaning_frequency.tsv").string());
        out << "meaning_iri\tlabel\tartwork_count\n";
        for (const auto& row : frequencies)
            out << row.meaning.str() << '\t' << text::tsv_escape(row.label) << '\t'
                << row.artwork_count << '\n';
    }
    {
        std::ofstream out(od / "serendipity_pairs.tsv", std::ios::binary);
        if (!out) throw IoFailure((od / "serendipity_pairs.tsv").string());
        out << "artwork_a\tartwork_b\tmeaning_iri\tcontext\n";
        for (const auto& pair : serendipity.listing)
            out << pair.artwork_a.str() << '\t' << pair.artwork_b.str() << '\t'
                << pair.meaning.str() << '\t' << text::tsv_escape(pair.context) << '\n';
    }

    nlohmann::ordered_json summary;
    summary["interpretation_count"] = interps.size();
    summary["meaning_count"] = index.size();
    summary["pair_meaning_count"] = serendipity.pair_meaning_count;
    summary["distinct_pair_count"] = serendipity.distinct_pair_count;
    summary["distinct_exact"] = serendipity.distinct_exact;
    summary["pair_cap"] = serendipity.pair_cap;
    summary["same_context"] = cfg.same_context;
    summary["top_k"] = cfg.top_k;
    nlohmann::ordered_json levels_json = nlohmann::ordered_json::array();
    for (const auto& row : levels.rows()) {
        nlohmann::ordered_json lj;
        lj["level"] = std::string(to_tag(row.level));
        lj["subclass"] = row.subclass ? std::string(to_tag(*row.subclass)) : std::string();
        lj["total"] = row.total;
        lj["unique"] = row.unique;
        levels_json.push_back(std::move(lj));
    }
    summary["level_distribution"] = std::move(levels_json);
    summary["preiconographic_share"] = levels.preiconographic_share();
    write_json(summary, od / "analytics_summary.json");
    std::cout << "serendipity: " << serendipity.pair_meaning_count << " pair-meaning connections, "
              << serendipity.distinct_pair_count << " distinct pairs"
              << (serendipity.distinct_exact ? "" : " (capped)") << '\n';
    return 0;
}

int cmd_evaluate(const RunConfig& cfg, bool dry_run) {
    require_input(cfg.scores_path, "scores_path");
    if (!cfg.annotations_path.empty()) require_input(cfg.annotations_path, "annotations_path");
    if (dry_run) {
        std::cout << "dry-run: evaluate config ok\n";
        return 0;
    }
    ensure_out_dir(cfg.out_dir);

    auto rows = read_scores_csv(cfg.scores_path);
    EvaluationReport report = build_report(rows);

    fs::path od(cfg.out_dir);
    write_report_csv(report, (od / "evaluation_report.csv").string());
    std::string table = format_report_table(report);
    {
        std::ofstream out(od / "evaluation_report.txt", std::ios::binary);
        if (!out) throw IoFailure((od / "evaluation_report.txt").string());
        out << table;
    }

    nlohmann::ordered_json summary;
    summary["row_count"] = report.rows.size();
    if (!cfg.annotations_path.empty()) {
        auto sheets = read_annotations_csv(cfg.annotations_path);
        summary["annotation_cr2"] = score_cr2(sheets);
        summary["annotator_count"] = sheets.size();
    }
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json rj;
        rj["kg_name"] = row.kg_name;
        rj["content"] = row.aggregates.content;
        rj["structure"] = row.aggregates.structure;
        rj["overall"] = row.aggregates.overall;
        rj["rank_overall"] = row.rank_overall;
        rows_json.push_back(std::move(rj));
    }
    summary["rows"] = std::move(rows_json);
    write_json(summary, od / "evaluation_summary.json");
    std::cout << table;
    return 0;
}

int cmd_pipeline(const RunConfig& cfg, bool dry_run) {
    bool have_wikidata = !cfg.depicts_path.empty();
    bool have_arco = !cfg.descriptions_path.empty();
    if (!have_wikidata && !have_arco)
        throw ConfigError("pipeline needs depicts_path and/or descriptions_path");

    nlohmann::ordered_json manifest;
    auto run_source = [&](const std::string& name, bool wikidata) {
        RunConfig sub = cfg;
        sub.out_dir = (fs::path(cfg.out_dir) / name).string();
        int rc = wikidata ? cmd_convert_wikidata(sub, dry_run) : cmd_convert_arco(sub, dry_run);
        if (rc != 0) return rc;
        if ((rc = cmd_enrich(sub, dry_run)) != 0) return rc;
        if ((rc = cmd_emit(sub, dry_run)) != 0) return rc;
        if ((rc = cmd_analyze(sub, dry_run)) != 0) return rc;
        if (!dry_run) {
            nlohmann::ordered_json artifacts = nlohmann::ordered_json::array();
            std::vector<fs::path> names;
            for (const auto& entry : fs::directory_iterator(sub.out_dir))
                names.push_back(entry.path().filename());
            std::sort(names.begin(), names.end());
            for (const auto& n : names) artifacts.push_back((fs::path(name) / n).generic_string());
            manifest[name] = std::move(artifacts);
        }
        return 0;
    };

    if (have_wikidata)
        if (int rc = run_source("wikidata", true); rc != 0) return rc;
    if (have_arco)
        if (int rc = run_source("arco", false); rc != 0) return rc;

    if (dry_run) {
        std::cout << "dry-run: pipeline config ok\n";
        return 0;
    }
    write_json(manifest, fs::path(cfg.out_dir) / "manifest.json");
    std::cout << "pipeline complete; manifest at "
              << (fs::path(cfg.out_dir) / "manifest.json").string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"re-engineer artwork depiction data into ICON-shaped linked open data"};
    app.require_subcommand(1);
    // global flags are accepted on either side of the subcommand
    app.fallthrough();

    CliOverrides cli;
    app.add_option("--config", cli.config_path, "flat key=value config file");
    app.add_option("--out", cli.out_dir, "output directory (overrides config)");
    unsigned jobs_flag = 0;
    uint64_t seed_flag = 0, pair_cap_flag = 0;
    size_t top_k_flag = 0;
    bool same_context_flag = false;
    auto* jobs_opt = app.add_option("--jobs", jobs_flag, "worker threads (0 = hardware)");
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed recorded for reproducibility");
    auto* top_k_opt = app.add_option("--top-k", top_k_flag, "ranking length");
    auto* same_ctx_opt = app.add_flag("--same-context", same_context_flag,
                                      "match meanings only within the same cultural context");
    auto* pair_cap_opt = app.add_option("--pair-cap", pair_cap_flag,
                                        "distinct-pair materialization cap");
    app.add_flag("--dry-run", cli.dry_run, "validate config and inputs, write nothing");

    auto* harvest = app.add_subcommand("harvest", "page a depicts query off a SPARQL endpoint");
    auto* convert_wd = app.add_subcommand("convert-wikidata", "typed statements to full-profile recognitions");
    auto* convert_arco = app.add_subcommand("convert-arco", "free-text descriptions to shortcut recognitions");
    auto* enrich_cmd = app.add_subcommand("enrich", "infer cultural symbolism from the KB");
    auto* emit_cmd = app.add_subcommand("emit", "serialize recognitions and interpretations as RDF");
    auto* analyze_cmd = app.add_subcommand("analyze", "serendipity, rankings, level distribution");
    auto* evaluate_cmd = app.add_subcommand("evaluate", "six-criterion scoring report");
    auto* pipeline_cmd = app.add_subcommand("pipeline", "convert, enrich, emit, analyze per source");

    CLI11_PARSE(app, argc, argv);

    if (*jobs_opt) cli.jobs = jobs_flag;
    if (*seed_opt) cli.seed = seed_flag;
    if (*top_k_opt) cli.top_k = top_k_flag;
    if (*same_ctx_opt) cli.same_context = same_context_flag;
    if (*pair_cap_opt) cli.pair_cap = pair_cap_flag;

    try {
        RunConfig cfg = make_config(cli);
        if (harvest->parsed()) return cmd_harvest(cfg, cli.dry_run);
        if (convert_wd->parsed()) return cmd_convert_wikidata(cfg, cli.dry_run);
        if (convert_arco->parsed()) return cmd_convert_arco(cfg, cli.dry_run);
        if (enrich_cmd->parsed()) return cmd_enrich(cfg, cli.dry_run);
        if (emit_cmd->parsed()) return cmd_emit(cfg, cli.dry_run);
        if (analyze_cmd->parsed()) return cmd_analyze(cfg, cli.dry_run);
        if (evaluate_cmd->parsed()) return cmd_evaluate(cfg, cli.dry_run);
        if (pipeline_cmd->parsed()) return cmd_pipeline(cfg, cli.dry_run);
        std::cerr << "error: no subcommand\n";
        return static_cast<int>(ExitCode::Config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Config);
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Input);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Internal);
    }
}
