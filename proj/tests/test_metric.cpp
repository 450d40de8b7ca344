#include <gtest/gtest.h>

#include <random>

#include "bspec/metric.hpp"
#include "fixtures.hpp"

using namespace bspec;

namespace {

PathWord word(const BratteliGraph& g, const std::vector<std::string>& ids) {
    return parse_word(g, ids, PathMode::TauExtended);
}

} // namespace

TEST(Metric, DyadicDigitFormula) {
    // tau sends every edge to 0, so each later digit 1 costs one H-step.
    auto g = fixtures::load("dyadic.json");
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        auto x = random_path(g, 0, 10, rng), y = random_path(g, 0, 10, rng);
        int n = 0;
        while (n < 10 && x[n] == y[n]) ++n;
        double expect = 0;
        if (n < 10) {
            expect = std::pow(0.5, n + 1);
            for (int m = n + 1; m < 10; ++m) expect += (x[m] + y[m]) * std::pow(0.5, m + 1);
        }
        auto d = connes_distance(g, {x, PathMode::TauExtended}, {y, PathMode::TauExtended}, 10);
        EXPECT_NEAR(d.value, expect, 1e-15);
    }
}

TEST(Metric, ClosedFormMatchesGeodesicOracle) {
    for (const auto& name : {"dyadic.json", "fib.json", "trib.json", "ev1.json"}) {
        auto g = fixtures::load(name);
        std::mt19937_64 rng(11);
        int v = g.star_vertex();
        for (int k = 0; k < 25; ++k) {
            PathWord x{random_path(g, v, 6, rng), PathMode::TauExtended};
            PathWord y{random_path(g, v, 6, rng), PathMode::TauExtended};
            double d = connes_distance(g, x, y, 10).value;
            double o = geodesic_oracle(g, x, y, 10);
            EXPECT_NEAR(d, o, 1e-12) << name;
        }
    }
}

TEST(Metric, FibonacciExamples) {
    auto g = fixtures::load("fib.json");
    EXPECT_NEAR(connes_distance(g, word(g, {"ab"}), word(g, {"aa"}), 12).value, 0.5, 1e-15);
    EXPECT_NEAR(connes_distance(g, word(g, {"aa", "ab", "ba"}), word(g, {"ab", "ba", "ab"}), 12).value, 0.875,
                1e-15);
    auto same = connes_distance(g, word(g, {"aa", "ab"}), word(g, {"aa", "ab"}), 12);
    EXPECT_EQ(same.value, 0.0);
    EXPECT_EQ(same.n_xy, 0);
}

TEST(Metric, MetricAxioms) {
    auto g = fixtures::load("trib.json");
    HDistance hd(g);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        PathWord x{random_path(g, 0, 8, rng), PathMode::TauExtended};
        PathWord y{random_path(g, 0, 8, rng), PathMode::TauExtended};
        PathWord z{random_path(g, 0, 8, rng), PathMode::TauExtended};
        double xy = connes_distance(g, hd, x, y, 16).value;
        double yx = connes_distance(g, hd, y, x, 16).value;
        double xz = connes_distance(g, hd, x, z, 16).value;
        double zy = connes_distance(g, hd, z, y, 16).value;
        EXPECT_DOUBLE_EQ(xy, yx);
        EXPECT_LE(xy, xz + zy + 1e-15);
        EXPECT_EQ(xy == 0, tau_extend(g, x, 16).edges == tau_extend(g, y, 16).edges);
    }
}

TEST(Metric, DisconnectedHorizontalRelation) {
    auto s = load_graph_spec(fixtures::data("fib_split_h.json"));
    auto g = build_graph(s);
    try {
        connes_distance(g, word(g, {"ab"}), word(g, {"aa"}), 8);
        FAIL() << "expected DisconnectedH";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DisconnectedH);
    }
    EXPECT_FALSE(check_connectivity(g));
}

TEST(Metric, OracleDepthCap) {
    auto g = fixtures::load("dyadic.json");
    EXPECT_THROW(geodesic_oracle(g, word(g, {"0"}), word(g, {"1"}), 15), Error);
}

TEST(Metric, TelescopingSandwich) {
    for (const auto& name : {"dyadic.json", "fib.json", "trib.json"}) {
        auto g = fixtures::load(name);
        for (int p : {2, 3}) {
            auto c = telescoping_lipschitz_check(g, p, 200, 12, 42);
            EXPECT_TRUE(c.all_pass) << name << " p=" << p;
            EXPECT_GE(c.c_low, 1.0 - 1e-12);
            EXPECT_LE(c.c_high, std::pow(g.rho, 1 - p) + 1e-12);
            EXPECT_EQ(c.samples, 200);
        }
    }
}

TEST(Metric, TelescopedWordsRegroup) {
    auto g = fixtures::load("fib.json");
    auto gp = telescope(g, 2);
    auto w = word(g, {"aa", "ab", "ba", "aa"});
    auto t = to_telescoped(g, gp, 2, w);
    ASSERT_EQ(t.edges.size(), 2u);
    EXPECT_EQ(gp.edges[t.edges[0]].id, "aa.ab");
    EXPECT_EQ(gp.edges[t.edges[1]].id, "ba.aa");
    EXPECT_THROW(to_telescoped(g, gp, 2, word(g, {"aa"})), Error);
}
