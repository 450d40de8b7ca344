#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>

#include "bspec/eigen.hpp"
#include "fixtures.hpp"

using namespace bspec;

namespace {

IntMatrix to_int(const std::vector<std::vector<int>>& a) {
    IntMatrix m(static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
    return m;
}

// Power iteration on x -> A x (right) or x -> A^T x (left).
Eigen::VectorXd power(const Eigen::MatrixXd& a, double& lambda) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(a.rows());
    for (int k = 0; k < 5000; ++k) {
        Eigen::VectorXd y = a * x;
        lambda = y.sum() / x.sum();
        x = y / y.sum();
    }
    return x;
}

} // namespace

TEST(Eigen, EigenvaluesMatchEigenSolver) {
    for (const auto& name : fixtures::graph_fixtures()) {
        auto g = fixtures::load(name);
        auto ed = eigen_decompose(graph_matrix(g));
        Eigen::EigenSolver<Eigen::MatrixXd> es(ed.matrix);
        std::vector<cplx> ref(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        int total = 0;
        for (size_t j = 0; j < ed.eigenvalues.size(); ++j) {
            total += ed.multiplicity[j];
            int hits = 0;
            for (const auto& z : ref) hits += std::abs(z - ed.eigenvalues[j]) < 1e-6;
            EXPECT_EQ(hits, ed.multiplicity[j]) << name;
        }
        EXPECT_EQ(total, static_cast<int>(ref.size()));
        for (size_t j = 1; j < ed.eigenvalues.size(); ++j)
            EXPECT_GE(std::abs(ed.eigenvalues[j - 1]) + 1e-12, std::abs(ed.eigenvalues[j]));
    }
}

TEST(Eigen, PerronFrobeniusMatchesPowerIteration) {
    for (const auto& name : fixtures::graph_fixtures()) {
        auto g = fixtures::load(name);
        auto pf = perron_frobenius(graph_matrix(g));
        auto ed = eigen_decompose(graph_matrix(g));
        double lam = 0, lam_t = 0;
        Eigen::VectorXd r = power(ed.matrix, lam);
        Eigen::VectorXd l = power(ed.matrix.transpose(), lam_t);
        l /= r.dot(l);
        EXPECT_NEAR(pf.pf, lam, 1e-10) << name;
        EXPECT_NEAR(lam, lam_t, 1e-10);
        EXPECT_NEAR((pf.R - r).norm(), 0.0, 1e-10) << name;
        EXPECT_NEAR((pf.L - l).norm(), 0.0, 1e-10) << name;
        EXPECT_NEAR(pf.R.sum(), 1.0, 1e-12);
        EXPECT_NEAR(pf.R.dot(pf.L), 1.0, 1e-12);
        EXPECT_GT(pf.R.minCoeff(), 0.0);
        EXPECT_GT(pf.L.minCoeff(), 0.0);
    }
    EXPECT_NEAR(perron_frobenius(graph_matrix(fixtures::load("fib.json"))).pf, (1 + std::sqrt(5.0)) / 2, 1e-14);
}

TEST(Eigen, EigenvectorsAreBiorthonormal) {
    auto g = fixtures::load("trib.json");
    auto ed = eigen_decompose(graph_matrix(g));
    Eigen::MatrixXcd a = ed.matrix.cast<cplx>();
    for (size_t j = 0; j < ed.eigenvalues.size(); ++j)
        for (size_t k = 0; k < ed.eigenvalues.size(); ++k) {
            cplx ip = ed.left[j][0].transpose() * ed.right[k][0];
            EXPECT_NEAR(std::abs(ip - cplx(j == k ? 1.0 : 0.0)), 0.0, 1e-10);
        }
    for (size_t j = 0; j < ed.eigenvalues.size(); ++j)
        EXPECT_NEAR((a * ed.right[j][0] - ed.eigenvalues[j] * ed.right[j][0]).norm(), 0.0, 1e-10);
}

TEST(Eigen, EdgeCountsFromCoefficientsMatchExactCounts) {
    for (const auto& name : fixtures::graph_fixtures()) {
        auto g = fixtures::load(name);
        auto ed = eigen_decompose(graph_matrix(g));
        auto cc = c_coefficients(ed, g);
        for (int n = 1; n <= 25; ++n) {
            double exact = horizontal_count(g, n).get_d();
            cplx fit = edge_count_from_coefficients(ed, cc, n);
            EXPECT_NEAR(fit.real(), exact, 1e-9 * exact + 1e-9) << name << " n=" << n;
            EXPECT_NEAR(fit.imag(), 0.0, 1e-9 * exact + 1e-9);
        }
    }
}

TEST(Eigen, DyadicLeadingCoefficient) {
    auto g = fixtures::load("dyadic.json");
    auto ed = eigen_decompose(graph_matrix(g));
    auto cc = c_coefficients(ed, g);
    ASSERT_EQ(cc.c.size(), 1u);
    // #E_n = 2^n = C lambda^n with lambda = 2 gives C = 1.
    EXPECT_NEAR(std::abs(cc.c[0] - cplx(1.0)), 0.0, 1e-12);
}

TEST(Eigen, RepeatedEigenvalueDetectsNonDiagonalizable) {
    // Characteristic polynomial (x - 2)(x + 1)^2 with a single Jordan block at -1.
    auto ed = eigen_decompose(to_int({{0, 0, 1}, {1, 0, 1}, {1, 2, 0}}));
    EXPECT_FALSE(ed.diagonalizable);
    EXPECT_NEAR(ed.pf, 2.0, 1e-12);
    // (x - 3)(x - 1)^2, again one Jordan block; this one has a loop for the star edge.
    auto g = fixtures::from_matrix({{1, 0, 1}, {1, 2, 0}, {1, 1, 2}}, 0.2);
    auto eg = eigen_decompose(graph_matrix(g));
    EXPECT_FALSE(eg.diagonalizable);
    EXPECT_NEAR(eg.pf, 3.0, 1e-12);
    try {
        c_coefficients(eg, g);
        FAIL() << "expected NotDiagonalizable";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotDiagonalizable);
    }
}

TEST(Eigen, RepeatedButDiagonalizable) {
    // J - I on 3 vertices: eigenvalues 2 and -1 (twice), symmetric so diagonalizable.
    IntMatrix a = to_int({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    auto ed = eigen_decompose(a);
    EXPECT_TRUE(ed.diagonalizable);
    ASSERT_EQ(ed.eigenvalues.size(), 2u);
    EXPECT_EQ(ed.multiplicity[1], 2);
    EXPECT_EQ(ed.right[1].size(), 2u);
}

TEST(Eigen, CharpolyMatchesDefinition) {
    IntMatrix a = to_int({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}});
    auto p = charpoly(a);
    ASSERT_EQ(p.size(), 4u);
    EXPECT_EQ(p[3], 1);
    EXPECT_EQ(p[2], -1);
    EXPECT_EQ(p[1], -1);
    EXPECT_EQ(p[0], -1);
}

TEST(Eigen, NonPrimitiveRejected) {
    EXPECT_THROW(eigen_decompose(to_int({{0, 1}, {1, 0}})), Error);
}
