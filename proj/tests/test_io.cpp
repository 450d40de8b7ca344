#include <gtest/gtest.h>

#include "bspec/io.hpp"
#include "fixtures.hpp"

using namespace bspec;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(Io, GraphSpecRoundTrip) {
    auto g = fixtures::load("trib.json");
    auto j = graph_to_json(g);
    auto g2 = build_graph(parse_graph_spec(j));
    EXPECT_EQ(g2.vertices, g.vertices);
    ASSERT_EQ(g2.num_edges(), g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        EXPECT_EQ(g2.edges[e].id, g.edges[e].id);
        EXPECT_EQ(g2.tau[e], g.tau[e]);
    }
    EXPECT_EQ(g2.horizontal.size(), g.horizontal.size());
    EXPECT_EQ(g2.rho, g.rho);
}

TEST(Io, GraphSpecErrors) {
    auto base = json::parse(read_file(fixtures::data("fib.json")));
    auto missing = base;
    missing.erase("star");
    EXPECT_EQ(code_of([&] { parse_graph_spec(missing); }), ErrorCode::Parse);
    auto bad_tau = base;
    bad_tau["tau"] = "greedy";
    EXPECT_EQ(code_of([&] { parse_graph_spec(bad_tau); }), ErrorCode::Parse);
    auto bad_rho = base;
    bad_rho["rho"] = "half";
    EXPECT_EQ(code_of([&] { parse_graph_spec(bad_rho); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { load_graph_spec(fixtures::data("no_such_file.json")); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { build_graph(load_graph_spec(fixtures::data("bad_rho.json"))); }),
              ErrorCode::RhoOutOfRange);
}

TEST(Io, ExplicitTauAndHorizontal) {
    auto j = json::parse(R"({"vertices": ["o"],
        "edges": [{"id": "0", "source": "o", "range": "o"}, {"id": "1", "source": "o", "range": "o"}],
        "star": "0", "rho": 0.5, "tau": {"0": "0", "1": "0"},
        "horizontal": [{"from": "0", "to": "1", "orientation": "+"}, {"from": "1", "to": "0", "orientation": "-"}]})");
    auto g = build_graph(parse_graph_spec(j));
    EXPECT_EQ(g.horizontal.size(), 2u);
    EXPECT_EQ(g.horizontal[1].orientation, Orientation::Minus);
    j["horizontal"][1]["orientation"] = "+";
    EXPECT_EQ(code_of([&] { build_graph(parse_graph_spec(j)); }), ErrorCode::HorizontalInvalid);
}

TEST(Io, RulesParsing) {
    auto r = parse_rules(json::parse(R"({"alphabet": ["a", "b"], "rules": {"a": ["a", "b"], "b": "a"},
                                         "H_tr": [["a:0", "b:0"]]})"));
    EXPECT_EQ(r.words[0], (std::vector<int>{0, 1}));
    EXPECT_EQ(r.words[1], (std::vector<int>{0}));
    ASSERT_EQ(r.h_tr.size(), 1u);
    EXPECT_EQ(r.h_tr[0].first, "a:0");
    EXPECT_EQ(code_of([] { parse_rules(json::parse(R"({"alphabet": ["a"], "rules": {"a": "ax"}})")); }),
              ErrorCode::Parse);
    EXPECT_EQ(code_of([] { parse_rules(json::parse(R"({"alphabet": ["a", "b"], "rules": {"a": "ab"}})")); }),
              ErrorCode::Parse);
}

TEST(Io, PairsParsing) {
    auto g = fixtures::load("fib.json");
    auto pairs = parse_pairs(g, json::parse(read_file(fixtures::data("fib_pairs.json"))));
    ASSERT_EQ(pairs.size(), 2u);
    EXPECT_EQ(word_ids(g, pairs[1].first.edges), (std::vector<std::string>{"aa", "ab", "ba"}));
    EXPECT_EQ(pairs[0].first.mode, PathMode::TauExtended);
    EXPECT_EQ(code_of([&] { parse_pairs(g, json::parse(R"([{"x": ["ab", "ab"], "y": ["aa"]}])")); }),
              ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { parse_pairs(g, json::parse(R"([{"x": ["zz"], "y": ["aa"]}])")); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { parse_pairs(g, json::parse(R"({"x": 1})")); }), ErrorCode::Parse);
}

TEST(Io, CsvQuoting) {
    CsvWriter w({"a", "b"});
    w.row({"1,2", "say \"hi\""});
    w.row({"plain", "x"});
    EXPECT_EQ(w.str(), "a,b\n\"1,2\",\"say \"\"hi\"\"\"\nplain,x\n");
    EXPECT_THROW(w.row({"only one"}), Error);
}

TEST(Io, DigestIsFnv1a) {
    // Published FNV-1a 64 test vectors.
    EXPECT_EQ(digest(""), "cbf29ce484222325");
    EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(digest("foobar"), "85944171f73967e8");
}

TEST(Io, ReportSkeleton) {
    auto r = make_report("zeta", {"--re", "2"}, "abc");
    std::vector<std::string> keys;
    for (const auto& [k, v] : r.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "command", "arguments", "input_digest", "results",
                                              "warnings"}));
    EXPECT_EQ(r["schema_version"], kSchemaVersion);
}

TEST(Io, ShortestDoubles) {
    EXPECT_EQ(fmt_double(0.1), "0.1");
    EXPECT_EQ(fmt_double(1.0), "1");
    EXPECT_EQ(std::stod(fmt_double(M_PI)), M_PI);
}
