#pragma once

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <json.hpp>

#include <chrono>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "iiconforge/harvester.hpp"

namespace iiconforge {

struct FetchResult {
    std::vector<DepictsStatement> statements;
    size_t pages_fetched = 0;
    size_t retries = 0;
    std::vector<std::string> retry_log;
};

namespace detail {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path; // starts with '/'
};

inline SplitUrl split_url(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint URL lacks a scheme: " + url);
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

inline std::string url_encode(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size() * 3);
    for (unsigned char c : s) {
        bool plain = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                     c == '-' || c == '_' || c == '.' || c == '~';
        if (plain) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

inline bool retryable_status(int status) {
    return status == 429 || status == 500 || status == 502 || status == 503 || status == 504;
}

inline std::string binding_value(const nlohmann::json& row, const char* var) {
    auto it = row.find(var);
    if (it == row.end() || !it->is_object()) return "";
    auto v = it->find("value");
    return v != it->end() && v->is_string() ? v->get<std::string>() : "";
}

/// Stable key for stream-level deduplication: artwork, element and the
/// sorted qualifier multiset.
inline std::string statement_dedup_key(const DepictsStatement& s) {
    std::vector<std::string> quals;
    for (const auto& q : s.qualifiers)
        quals.push_back(std::string(to_tag(q.kind)) + '\x1f' + q.raw_kind + '\x1f' + q.value);
    std::sort(quals.begin(), quals.end());
    std::string key = s.artwork.str() + '\x1e' + s.element.str();
    for (auto& q : quals) key += '\x1e' + q;
    return key;
}

} // namespace detail

/// Replace the {limit}/{offset} placeholders of a query template.
inline std::string instantiate_query(std::string query, size_t limit, size_t offset) {
    auto replace_all = [&](std::string_view needle, const std::string& value) {
        size_t pos = 0;
        while ((pos = query.find(needle, pos)) != std::string::npos) {
            query.replace(pos, needle.size(), value);
            pos += value.size();
        }
    };
    replace_all("{limit}", std::to_string(limit));
    replace_all("{offset}", std::to_string(offset));
    return query;
}

/// Page through a SPARQL endpoint until a short page, retrying transient
/// failures with exponential backoff. Result rows are merged into
/// DepictsStatements (consecutive rows sharing artwork+element fold into
/// one statement) and deduplicated on (artwork, element, qualifier set).
///
/// Expected SPARQL JSON variables per row: artwork, artworkLabel, element,
/// elementLabel, types (|-separated IRIs), qualifierKind, qualifierValue.
inline FetchResult fetch_depicts(const EndpointConfig& cfg, const std::string& query_template) {
    if (cfg.page_size < 1) throw ConfigError("page_size must be >= 1");
    if (cfg.request_timeout.count() <= 0) throw ConfigError("request_timeout must be > 0");
    if (query_template.find("{limit}") == std::string::npos ||
        query_template.find("{offset}") == std::string::npos)
        throw ConfigError("query template must contain {limit} and {offset} placeholders");

    detail::SplitUrl url = detail::split_url(cfg.endpoint_url);
    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(cfg.request_timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(cfg.request_timeout));
    client.set_follow_location(true);

    httplib::Headers headers = {
        {"User-Agent", cfg.user_agent},
        {"Accept", "application/sparql-results+json"},
    };

    FetchResult result;
    std::set<std::string> seen;
    size_t offset = 0;

    while (true) {
        std::string query = instantiate_query(query_template, cfg.page_size, offset);
        std::string target = url.path + (url.path.find('?') == std::string::npos ? "?" : "&") +
                             "query=" + detail::url_encode(query) + "&format=json";

        httplib::Result res;
        size_t attempt = 0;
        while (true) {
            res = client.Get(target, headers);
            bool transport_error = !res;
            bool retryable = transport_error || detail::retryable_status(res->status);
            if (!transport_error && res->status >= 200 && res->status < 300) break;
            if (!retryable) throw QueryRejected(res->status, res->body);
            if (attempt >= cfg.max_retries) {
                std::string detail = transport_error ? httplib::to_string(res.error())
                                                     : "status " + std::to_string(res->status);
                throw EndpointUnreachable(detail + " (page " + std::to_string(result.pages_fetched + 1) + ")");
            }
            std::chrono::milliseconds delay = cfg.backoff_initial * (1LL << attempt);
            result.retry_log.push_back("page " + std::to_string(result.pages_fetched + 1) +
                                       " attempt " + std::to_string(attempt + 1) + " failed, retrying in " +
                                       std::to_string(delay.count()) + "ms");
            ++result.retries;
            ++attempt;
            std::this_thread::sleep_for(delay);
        }

        ++result.pages_fetched;
        size_t page_no = result.pages_fetched;

        nlohmann::json doc = nlohmann::json::parse(res->body, nullptr, false);
        if (doc.is_discarded()) throw MalformedResponse(page_no, "body is not valid JSON");
        if (!doc.contains("results") || !doc["results"].contains("bindings") ||
            !doc["results"]["bindings"].is_array())
            throw MalformedResponse(page_no, "missing results.bindings array");

        const auto& bindings = doc["results"]["bindings"];
        std::optional<DepictsStatement> current;
        auto flush = [&]() {
            if (!current) return;
            if (seen.insert(detail::statement_dedup_key(*current)).second)
                result.statements.push_back(std::move(*current));
            current.reset();
        };
        for (const auto& row : bindings) {
            std::string artwork = detail::binding_value(row, "artwork");
            std::string element = detail::binding_value(row, "element");
            if (!Iri::is_valid(artwork) || !Iri::is_valid(element))
                throw MalformedResponse(page_no, "row lacks valid artwork/element IRIs");
            if (!current || current->artwork.str() != artwork || current->element.str() != element) {
                flush();
                current.emplace();
                current->artwork = Iri(artwork);
                current->element = Iri(element);
                current->artwork_label = detail::binding_value(row, "artworkLabel");
                current->element_label = detail::binding_value(row, "elementLabel");
            }
            std::string types = detail::binding_value(row, "types");
            if (!types.empty())
                for (const auto& t : text::split(types, '|'))
                    if (Iri::is_valid(t)) current->element_types.insert(Iri(t));
            std::string qkind = detail::binding_value(row, "qualifierKind");
            if (!qkind.empty()) {
                DepictsQualifier q;
                q.raw_kind = qkind;
                q.kind = classify_qualifier_kind(qkind);
                q.value = detail::binding_value(row, "qualifierValue");
                q.value_is_iri = Iri::is_valid(q.value);
                current->qualifiers.push_back(std::move(q));
            }
        }
        flush();

        if (bindings.size() < cfg.page_size) break;
        offset += cfg.page_size;
    }
    return result;
}

} // namespace iiconforge
