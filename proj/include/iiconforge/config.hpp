#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "iiconforge/errors.hpp"
#include "iiconforge/text.hpp"

namespace iiconforge {

enum class ExitCode : int {
    Ok = 0,
    Config = 1,   // bad or missing configuration
    Input = 2,    // unreadable or malformed data
    Internal = 3, // invariant violation, a bug
};

struct RunConfig {
    // inputs
    std::string depicts_path;
    std::string depicts_format = "tsv"; // "tsv" or "ntriples"
    std::string descriptions_path;
    std::string alignment_path;
    std::string id_alignment_path;
    std::vector<std::string> kb_simulations; // TSV KB files
    std::vector<std::string> kb_labels;      // label alias files
    std::vector<std::string> kb_triples;     // N-Triples KB files
    std::string profile_path;
    std::string scores_path;
    std::string annotations_path;
    std::string query_path; // SPARQL template with {limit}/{offset}

    // endpoint (env IICONFORGE_ENDPOINT overrides)
    std::string endpoint_url;
    size_t page_size = 500;
    size_t max_retries = 3;

    // outputs and knobs
    std::string out_dir = "out";
    size_t top_k = 10;
    bool same_context = false;
    uint64_t pair_cap = 1'000'000;
    unsigned jobs = 1;
    uint64_t seed = 1;
    /// Catalogue timestamp; fixed by default so reruns stay byte-identical.
    std::string timestamp = "2026-01-01T00:00:00Z";
};

namespace detail {

inline bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key " + key + ": expected a boolean, got '" + value + "'");
}

template <class T>
T parse_number(const std::string& value, const std::string& key) {
    try {
        if constexpr (std::is_unsigned_v<T>) {
            unsigned long long v = std::stoull(value);
            if (v > std::numeric_limits<T>::max()) throw std::out_of_range(value);
            return static_cast<T>(v);
        } else {
            return static_cast<T>(std::stoll(value));
        }
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected a number, got '" + value + "'");
    }
}

} // namespace detail

/// Flat key=value config, "#" comments, unknown keys rejected. List-valued
/// keys (kb_simulations, kb_labels, kb_triples) accumulate on repetition.
inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string sv = text::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto eq = sv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config " + path + " line " + std::to_string(line_no) +
                              ": expected key=value");
        std::string key(text::trim(sv.substr(0, eq)));
        std::string value(text::trim(sv.substr(eq + 1)));

        if (key == "depicts_path") cfg.depicts_path = value;
        else if (key == "depicts_format") {
            if (value != "tsv" && value != "ntriples")
                throw ConfigError("config key depicts_format: expected tsv or ntriples");
            cfg.depicts_format = value;
        }
        else if (key == "descriptions_path") cfg.descriptions_path = value;
        else if (key == "alignment_path") cfg.alignment_path = value;
        else if (key == "id_alignment_path") cfg.id_alignment_path = value;
        else if (key == "kb_simulations") cfg.kb_simulations.push_back(value);
        else if (key == "kb_labels") cfg.kb_labels.push_back(value);
        else if (key == "kb_triples") cfg.kb_triples.push_back(value);
        else if (key == "profile_path") cfg.profile_path = value;
        else if (key == "scores_path") cfg.scores_path = value;
        else if (key == "annotations_path") cfg.annotations_path = value;
        else if (key == "query_path") cfg.query_path = value;
        else if (key == "endpoint_url") cfg.endpoint_url = value;
        else if (key == "page_size") cfg.page_size = detail::parse_number<size_t>(value, key);
        else if (key == "max_retries") cfg.max_retries = detail::parse_number<size_t>(value, key);
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "top_k") cfg.top_k = detail::parse_number<size_t>(value, key);
        else if (key == "same_context") cfg.same_context = detail::parse_bool(value, key);
        else if (key == "pair_cap") cfg.pair_cap = detail::parse_number<uint64_t>(value, key);
        else if (key == "jobs") cfg.jobs = detail::parse_number<unsigned>(value, key);
        else if (key == "seed") cfg.seed = detail::parse_number<uint64_t>(value, key);
        else if (key == "timestamp") cfg.timestamp = value;
        else
            throw ConfigError("config " + path + " line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
    }
    if (const char* env = std::getenv("IICONFORGE_ENDPOINT"); env && *env)
        cfg.endpoint_url = env;
    return cfg;
}

inline void require_input(const std::string& path, const std::string& what) {
    if (path.empty()) throw ConfigError(what + " is not configured");
    if (!std::filesystem::exists(path)) throw ConfigError(what + " does not exist: " + path);
}

/// Create the output directory if needed and prove it is writable.
inline void ensure_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw ConfigError("out_dir is not configured");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create out_dir " + out_dir + ": " + ec.message());
    auto probe = std::filesystem::path(out_dir) / ".write-probe";
    {
        std::ofstream f(probe, std::ios::binary);
        if (!f) throw ConfigError("out_dir is not writable: " + out_dir);
    }
    std::filesystem::remove(probe, ec);
}

} // namespace iiconforge
