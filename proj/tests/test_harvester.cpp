#include <gtest/gtest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "iiconforge/harvester.hpp"
#include "iiconforge/sparql.hpp"

using namespace iiconforge;

namespace {

const std::string kFixtures = FIXTURE_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    return path.string();
}

} // namespace

TEST(QualifierKind, Classification) {
    EXPECT_EQ(classify_qualifier_kind("wears"), RelationKind::Wears);
    EXPECT_EQ(classify_qualifier_kind("WEARS "), RelationKind::Wears);
    EXPECT_EQ(classify_qualifier_kind("symbolizes"), RelationKind::Symbolizes);
    EXPECT_EQ(classify_qualifier_kind("expression/gesture/pose"), RelationKind::ExpressionGestureOrPose);
    EXPECT_EQ(classify_qualifier_kind("expression, gesture, or body pose"),
              RelationKind::ExpressionGestureOrPose);
    EXPECT_EQ(classify_qualifier_kind("holds"), RelationKind::Other);
}

TEST(Dump, TsvFixtureReads) {
    auto stmts = read_depicts_dump(kFixtures + "/depicts_50.tsv", DumpFormat::Tsv);
    EXPECT_EQ(stmts.size(), 165u);

    std::set<Iri> artworks;
    for (const auto& s : stmts) artworks.insert(s.artwork);
    EXPECT_EQ(artworks.size(), 50u);

    // contiguous qualifier rows fold into their statement
    bool found_wears = false;
    for (const auto& s : stmts) {
        if (s.artwork.str() == "https://example.org/art/w03" &&
            s.element.str() == "https://example.org/entity/E_venus") {
            ASSERT_EQ(s.qualifiers.size(), 1u);
            EXPECT_EQ(s.qualifiers[0].kind, RelationKind::Wears);
            EXPECT_TRUE(s.qualifiers[0].value_is_iri);
            found_wears = true;
        }
    }
    EXPECT_TRUE(found_wears);
}

TEST(Dump, TsvRoundTripIsIdentity) {
    auto stmts = read_depicts_dump(kFixtures + "/depicts_50.tsv", DumpFormat::Tsv);
    std::string path = write_temp("depicts_rt.tsv", "");
    write_depicts_dump(stmts, path);
    auto again = read_depicts_dump(path, DumpFormat::Tsv);
    ASSERT_EQ(again.size(), stmts.size());
    for (size_t i = 0; i < stmts.size(); ++i) {
        EXPECT_EQ(again[i].artwork, stmts[i].artwork);
        EXPECT_EQ(again[i].element, stmts[i].element);
        EXPECT_EQ(again[i].element_types, stmts[i].element_types);
        EXPECT_EQ(again[i].qualifiers.size(), stmts[i].qualifiers.size());
    }
    std::remove(path.c_str());
}

TEST(Dump, NTriplesEncodingAgreesWithTsv) {
    auto tsv = read_depicts_dump(kFixtures + "/depicts_50.tsv", DumpFormat::Tsv);
    auto nt = read_depicts_dump(kFixtures + "/depicts_50.nt", DumpFormat::NTriplesSubset);
    ASSERT_EQ(nt.size(), tsv.size());
    auto key = [](const DepictsStatement& s) {
        return s.artwork.str() + "\x1e" + s.element.str() + "\x1e" +
               std::to_string(s.element_types.size()) + "\x1e" + std::to_string(s.qualifiers.size());
    };
    std::multiset<std::string> a, b;
    for (const auto& s : tsv) a.insert(key(s));
    for (const auto& s : nt) b.insert(key(s));
    EXPECT_EQ(a, b);
}

TEST(Dump, ReaderIsLazy) {
    DepictsDumpReader reader(kFixtures + "/depicts_50.tsv", DumpFormat::Tsv);
    auto first = reader.next();
    ASSERT_TRUE(first.has_value());
    // header + first statement's rows + one lookahead row, far below the full file
    EXPECT_LE(reader.lines_read(), 4u);
}

TEST(Dump, MalformedRowsRejected) {
    std::string bad_header = write_temp("dep_bad_header.tsv", "wrong\theader\n");
    EXPECT_THROW(read_depicts_dump(bad_header, DumpFormat::Tsv), MalformedRow);
    std::remove(bad_header.c_str());

    std::string bad_cols = write_temp(
        "dep_bad_cols.tsv", std::string(detail::kDepictsTsvHeader) + "\nhttps://x.org/w\tlabel\n");
    EXPECT_THROW(read_depicts_dump(bad_cols, DumpFormat::Tsv), MalformedRow);
    std::remove(bad_cols.c_str());

    std::string bad_iri = write_temp("dep_bad_iri.tsv",
                                     std::string(detail::kDepictsTsvHeader) +
                                         "\nnot-iri\tl\thttps://x.org/e\tl\t\t\t\n");
    EXPECT_THROW(read_depicts_dump(bad_iri, DumpFormat::Tsv), MalformedRow);
    std::remove(bad_iri.c_str());

    std::string orphan_value = write_temp("dep_orphan_qual.tsv",
                                          std::string(detail::kDepictsTsvHeader) +
                                              "\nhttps://x.org/w\tl\thttps://x.org/e\tl\t\t\tv\n");
    EXPECT_THROW(read_depicts_dump(orphan_value, DumpFormat::Tsv), MalformedRow);
    std::remove(orphan_value.c_str());
}

TEST(Dump, NTriplesRecordMissingCoreRejected) {
    std::string path = write_temp(
        "dep_incomplete.nt",
        "<https://x.org/rec/r1> <https://w3id.org/iiconforge/record#artwork> <https://x.org/w> .\n");
    EXPECT_THROW(read_depicts_dump(path, DumpFormat::NTriplesSubset), MalformedRow);
    std::remove(path.c_str());
}

TEST(Query, TemplateInstantiation) {
    EXPECT_EQ(instantiate_query("LIMIT {limit} OFFSET {offset}", 500, 1000),
              "LIMIT 500 OFFSET 1000");
    EXPECT_EQ(instantiate_query("{offset}+{offset}", 1, 2), "2+2");
}

TEST(Url, SplitAndEncode) {
    auto u = detail::split_url("https://query.example.org/sparql");
    EXPECT_EQ(u.base, "https://query.example.org");
    EXPECT_EQ(u.path, "/sparql");
    auto bare = detail::split_url("http://host:8080");
    EXPECT_EQ(bare.base, "http://host:8080");
    EXPECT_EQ(bare.path, "/");
    EXPECT_THROW(detail::split_url("no-scheme/path"), ConfigError);
    EXPECT_EQ(detail::url_encode("a b?c"), "a%20b%3Fc");
    EXPECT_EQ(detail::url_encode("A-_.~z9"), "A-_.~z9");
}

// ---- mock endpoint tests --------------------------------------------------

namespace {

struct MockRow {
    std::string artwork, element, types, qkind, qvalue;
};

std::string rows_to_json(const std::vector<MockRow>& rows) {
    nlohmann::json bindings = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["artwork"] = {{"type", "uri"}, {"value", r.artwork}};
        row["artworkLabel"] = {{"type", "literal"}, {"value", "label"}};
        row["element"] = {{"type", "uri"}, {"value", r.element}};
        row["elementLabel"] = {{"type", "literal"}, {"value", "el"}};
        if (!r.types.empty()) row["types"] = {{"type", "literal"}, {"value", r.types}};
        if (!r.qkind.empty()) {
            row["qualifierKind"] = {{"type", "literal"}, {"value", r.qkind}};
            row["qualifierValue"] = {{"type", "literal"}, {"value", r.qvalue}};
        }
        bindings.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["results"]["bindings"] = std::move(bindings);
    return doc.dump();
}

size_t extract_number(const std::string& query, const std::string& keyword) {
    auto pos = query.find(keyword);
    if (pos == std::string::npos) return 0;
    return static_cast<size_t>(std::stoull(query.substr(pos + keyword.size() + 1)));
}

class MockEndpoint {
public:
    explicit MockEndpoint(std::vector<MockRow> rows) : rows_(std::move(rows)) {
        server_.Get("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits_;
            if (fail_first_ > 0) {
                --fail_first_;
                res.status = 503;
                res.set_content("busy", "text/plain");
                return;
            }
            std::string query = req.get_param_value("query");
            size_t limit = extract_number(query, "LIMIT");
            size_t offset = extract_number(query, "OFFSET");
            std::vector<MockRow> page;
            for (size_t i = offset; i < rows_.size() && i < offset + limit; ++i)
                page.push_back(rows_[i]);
            res.set_content(rows_to_json(page), "application/sparql-results+json");
        });
        server_.Get("/reject", [](const httplib::Request&, httplib::Response& res) {
            res.status = 400;
            res.set_content("malformed query", "text/plain");
        });
        server_.Get("/garbage", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("this is not json", "text/plain");
        });
        server_.Get("/nobindings", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("{\"head\":{}}", "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~MockEndpoint() {
        server_.stop();
        thread_.join();
    }

    std::string url(const std::string& path = "/sparql") const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

    void fail_first(int n) { fail_first_ = n; }
    int hits() const { return hits_; }

private:
    std::vector<MockRow> rows_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> fail_first_{0};
    std::atomic<int> hits_{0};
};

const std::string kTemplate = "SELECT * WHERE { ?s ?p ?o } LIMIT {limit} OFFSET {offset}";

std::vector<MockRow> seven_rows() {
    std::vector<MockRow> rows;
    for (int i = 0; i < 7; ++i)
        rows.push_back({"https://x.org/w" + std::to_string(i), "https://x.org/e" + std::to_string(i),
                        "https://x.org/type/animal", "", ""});
    return rows;
}

} // namespace

TEST(Fetch, PagesUntilShortPage) {
    MockEndpoint mock(seven_rows());
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url();
    cfg.page_size = 3;
    auto result = fetch_depicts(cfg, kTemplate);
    EXPECT_EQ(result.statements.size(), 7u);
    EXPECT_EQ(result.pages_fetched, 3u); // 3 + 3 + 1 (short -> stop)
    EXPECT_EQ(result.retries, 0u);
}

TEST(Fetch, ExactMultipleNeedsEmptyFinalPage) {
    auto rows = seven_rows();
    rows.pop_back(); // 6 rows, page_size 3 -> pages of 3, 3, 0
    MockEndpoint mock(rows);
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url();
    cfg.page_size = 3;
    auto result = fetch_depicts(cfg, kTemplate);
    EXPECT_EQ(result.statements.size(), 6u);
    EXPECT_EQ(result.pages_fetched, 3u);
}

TEST(Fetch, ConsecutiveRowsFoldIntoOneStatement) {
    std::vector<MockRow> rows = {
        {"https://x.org/w1", "https://x.org/e1", "https://x.org/type/a", "wears", "https://x.org/crown"},
        {"https://x.org/w1", "https://x.org/e1", "https://x.org/type/b", "holds", "sword"},
        {"https://x.org/w1", "https://x.org/e2", "", "", ""},
    };
    MockEndpoint mock(rows);
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url();
    cfg.page_size = 10;
    auto result = fetch_depicts(cfg, kTemplate);
    ASSERT_EQ(result.statements.size(), 2u);
    EXPECT_EQ(result.statements[0].element_types.size(), 2u);
    ASSERT_EQ(result.statements[0].qualifiers.size(), 2u);
    EXPECT_TRUE(result.statements[0].qualifiers[0].value_is_iri);
    EXPECT_FALSE(result.statements[0].qualifiers[1].value_is_iri);
}

TEST(Fetch, CrossPageDuplicatesDropped) {
    // page boundary splits a repeated statement
    std::vector<MockRow> rows = {
        {"https://x.org/w1", "https://x.org/e1", "", "", ""},
        {"https://x.org/w2", "https://x.org/e2", "", "", ""},
        {"https://x.org/w1", "https://x.org/e1", "", "", ""},
    };
    MockEndpoint mock(rows);
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url();
    cfg.page_size = 2;
    auto result = fetch_depicts(cfg, kTemplate);
    EXPECT_EQ(result.statements.size(), 2u);
    EXPECT_EQ(result.pages_fetched, 2u);
}

TEST(Fetch, RetriesTransientFailuresWithBackoff) {
    MockEndpoint mock(seven_rows());
    mock.fail_first(2);
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url();
    cfg.page_size = 10;
    cfg.max_retries = 3;
    cfg.backoff_initial = std::chrono::milliseconds(1);
    auto result = fetch_depicts(cfg, kTemplate);
    EXPECT_EQ(result.statements.size(), 7u);
    EXPECT_EQ(result.retries, 2u);
    ASSERT_EQ(result.retry_log.size(), 2u);
    EXPECT_NE(result.retry_log[0].find("attempt 1"), std::string::npos);
}

TEST(Fetch, GivesUpAfterMaxRetries) {
    MockEndpoint mock(seven_rows());
    mock.fail_first(100);
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url();
    cfg.max_retries = 1;
    cfg.backoff_initial = std::chrono::milliseconds(1);
    EXPECT_THROW(fetch_depicts(cfg, kTemplate), EndpointUnreachable);
}

TEST(Fetch, NonRetryableStatusRejectsImmediately) {
    MockEndpoint mock({});
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url("/reject");
    try {
        fetch_depicts(cfg, kTemplate);
        FAIL() << "expected QueryRejected";
    } catch (const QueryRejected& e) {
        EXPECT_NE(std::string(e.what()).find("400"), std::string::npos);
    }
}

TEST(Fetch, MalformedBodiesRejected) {
    MockEndpoint mock({});
    EndpointConfig cfg;
    cfg.endpoint_url = mock.url("/garbage");
    EXPECT_THROW(fetch_depicts(cfg, kTemplate), MalformedResponse);
    cfg.endpoint_url = mock.url("/nobindings");
    EXPECT_THROW(fetch_depicts(cfg, kTemplate), MalformedResponse);
}

TEST(Fetch, TemplateWithoutPlaceholdersRejected) {
    EndpointConfig cfg;
    cfg.endpoint_url = "http://127.0.0.1:1/sparql";
    EXPECT_THROW(fetch_depicts(cfg, "SELECT * WHERE { ?s ?p ?o }"), ConfigError);
    EXPECT_THROW(fetch_depicts(cfg, "LIMIT {limit}"), ConfigError);
}
