#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bspec/forms.hpp"
#include "bspec/metric.hpp"
#include "bspec/numberfield.hpp"
#include "bspec/spectral.hpp"
#include "bspec/tiling.hpp"
#include "fixtures.hpp"

using namespace bspec;
using C = std::complex<double>;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

IntMatrix to_int(const std::vector<std::vector<int>>& a) {
    IntMatrix m(static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
    return m;
}

// Sum of the singular heat terms of eigenvalues with |lambda| > 1.
double power_terms(const SpectralModel& m, double t) {
    double r = -2 * m.log_rho;
    double sigma = -std::log(t);
    C total = 0;
    for (size_t j = 0; j < m.eigen.eigenvalues.size(); ++j) {
        C lam = m.eigen.eigenvalues[j];
        if (std::abs(lam) <= 1 + 1e-12) continue;
        C a = std::log(lam);
        total += m.coeffs.c[j] * frak_f(r, a, sigma, 60) * std::exp(-a / r * std::log(t));
    }
    return total.real();
}

// Least-squares slope b of y ~ a + b x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Fit of direct minus power terms against -log t; returns (b, expected b).
std::pair<double, double> log_term_fit(const BratteliGraph& g) {
    auto m = make_model(g);
    EdgeCounts counts(g);
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
        double lt = std::log(1e-8) + (std::log(1e-4) - std::log(1e-8)) * i / 40;
        double t = std::exp(lt);
        x.push_back(-lt);
        y.push_back(heat_trace_direct(g, counts, t, 1e-15) - power_terms(m, t));
    }
    double expect = 0;
    for (size_t j = 0; j < m.eigen.eigenvalues.size(); ++j)
        if (std::abs(m.eigen.eigenvalues[j] - 1.0) < 1e-9) expect = m.coeffs.c[j].real() / (-2 * m.log_rho);
    return {slope(x, y), expect};
}

Outcome criterion1() {
    auto g = fixtures::load("dyadic.json");
    auto m = make_model(g);
    double sd = spectral_dimension(g);
    auto rep = poles_and_residues(m, 0);
    double res = rep.poles.at(0).residue.real();
    double target = 1 / std::log(2.0);
    double num = (1e-6 * zeta_closed(m, 1 + 1e-6)).real();
    double series_num = 1e-6 * zeta_series(g, 1 + 1e-6, 60000000).value.real();
    bool warned = false;
    for (const auto& w : rep.warnings) warned = warned || w == kResidueNote;
    bool ok = sd == 1.0 && std::fabs(rep.poles[0].location.real() - 1) < 1e-12 && std::fabs(res - target) < 1e-9 &&
              std::fabs(num - target) / target < 1e-4 && std::fabs(series_num - target) / target < 1e-4 && warned;
    return {ok, fmt("s0=%.17g residue=%.12f (1/ln2=%.12f) (z-1)zeta: closed %.8f series %.8f warning=%s", sd, res,
                    target, num, series_num, warned ? "yes" : "no")};
}

Outcome criterion2() {
    std::ostringstream os;
    bool ok = true;
    for (const auto& name : {"dyadic.json", "fib.json"}) {
        auto g = fixtures::load(name);
        auto m = make_model(g);
        double worst = 0;
        for (int i = 0; i <= 24; ++i) {
            double t = std::pow(10.0, -8 + 6.0 * i / 24);
            worst = std::max(worst, std::fabs(heat_trace_direct(g, t) - heat_trace_expansion(m, t, 60)));
        }
        double t = 1e-10;
        double gt = std::pow(t, m.s0 / 2) * heat_trace_direct(g, t);
        double t2 = g.rho * g.rho * t;
        double g2 = std::pow(t2, m.s0 / 2) * heat_trace_direct(g, t2);
        double lp = std::fabs(g2 / gt - 1);
        double z0 = zeta_closed(m, 0.0).real();
        ok = ok && worst <= 1.0 && lp <= 1e-3;
        os << name << ": max|direct-expansion|=" << worst << " (zeta(0)=" << z0 << ") log-periodicity " << lp << "; ";
    }
    os << "the residual is the smooth remainder zeta(0), which the singular expansion omits";
    return {ok, os.str()};
}

Outcome criterion3() {
    std::ostringstream os;
    double worst = 0;
    for (const auto& name : fixtures::graph_fixtures()) {
        auto m = make_model(fixtures::load(name));
        auto rep = poles_and_residues(m, 0);
        double res = rep.poles.at(0).residue.real();
        double lhs = 0.5 * boost::math::tgamma(m.s0 / 2) * res;
        // Period mean of the leading coefficient by trapezoid sampling.
        double r = -2 * m.log_rho;
        C a = std::log(m.eigen.eigenvalues[0]);
        int M = 256;
        C mean = 0;
        for (int i = 0; i < M; ++i) mean += frak_f(r, a, r * i / M, 60);
        mean /= double(M);
        double rhs = (mean * m.coeffs.c[0]).real();
        double rel = std::fabs(lhs - rhs) / std::fabs(rhs);
        worst = std::max(worst, rel);
        os << name << " " << lhs << " vs " << rhs << "; ";
    }
    os << "max rel " << worst;
    return {worst < 1e-8, os.str()};
}

Outcome criterion4() {
    // EV1 with maximal H has C^{j0} = 0, so the expected slope is 0 and a relative
    // tolerance is meaningless; a second fixture with C^{j0} != 0 checks the slope.
    auto [b1, e1] = log_term_fit(fixtures::load("ev1.json"));
    double unit = 1 / (2 * std::log(2.0));
    bool ok1 = std::fabs(b1 - e1) <= 0.05 * unit;
    auto g2 = fixtures::from_matrix({{2, 1, 0}, {1, 0, 1}, {0, 2, 0}}, 0.5);
    auto [b2, e2] = log_term_fit(g2);
    bool ok2 = e2 != 0 && std::fabs(b2 - e2) <= 0.05 * std::fabs(e2);
    return {ok1 && ok2, fmt("EV1: b=%.3e expected %.3e (C^j0=0, abs tol %.3e); [[2,1,0],[1,0,1],[0,2,0]]: b=%.6f "
                            "expected %.6f rel %.2e",
                            b1, e1, 0.05 * unit, b2, e2, std::fabs(b2 - e2) / std::fabs(e2))};
}

Outcome criterion5() {
    auto g = fixtures::load("fib.json");
    auto m = make_model(g);
    auto out = g.out_edges();
    double worst_add = 0;
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : all_paths(g, n)) {
            double kids = 0;
            for (int e : out[g.edges[p.back()].range]) {
                auto q = p;
                q.push_back(e);
                kids += spectral_measure(m, q);
            }
            worst_add = std::max(worst_add, std::fabs(kids - spectral_measure(m, p)));
        }
    double worst_ces = 0;
    int count = 0;
    for (int d = 1; d <= 3; ++d)
        for (const auto& p : all_paths(g, d)) {
            auto res = state_cesaro(m, cylinder_indicator(g, p), 30);
            worst_ces = std::max(worst_ces, std::fabs(res.value - spectral_measure(m, p)));
            ++count;
        }
    return {worst_add <= 1e-12 && worst_ces <= 1e-6,
            fmt("additivity max err %.2e; Cesaro vs mu over %d cylinders max err %.2e", worst_add, count, worst_ces)};
}

Outcome criterion6() {
    std::ostringstream os;
    bool ok = true;
    for (const auto& name : fixtures::graph_fixtures()) {
        auto g = fixtures::load(name);
        HDistance hd(g);
        std::mt19937_64 rng(2024);
        int v = g.star_vertex();
        double worst = 0;
        int bad = 0;
        for (int k = 0; k < 200; ++k) {
            PathWord x{random_path(g, v, 12, rng), PathMode::TauExtended};
            PathWord y{random_path(g, v, 12, rng), PathMode::TauExtended};
            auto d = connes_distance(g, hd, x, y, 12);
            double o = geodesic_oracle(g, x, y, 12);
            worst = std::max(worst, std::fabs(d.value - o));
            bad += std::fabs(d.value - o) > d.tail_bound;
        }
        int tri_bad = 0;
        for (int k = 0; k < 200; ++k) {
            PathWord x{random_path(g, v, 12, rng), PathMode::TauExtended};
            PathWord y{random_path(g, v, 12, rng), PathMode::TauExtended};
            PathWord z{random_path(g, v, 12, rng), PathMode::TauExtended};
            auto xy = connes_distance(g, hd, x, y, 12);
            auto xz = connes_distance(g, hd, x, z, 12);
            auto zy = connes_distance(g, hd, z, y, 12);
            tri_bad += xy.value > xz.value + zy.value + 3 * xy.tail_bound;
        }
        ok = ok && bad == 0 && tri_bad == 0;
        os << name << ": max|closed-oracle|=" << worst << " oracle misses " << bad << ", triangle violations "
           << tri_bad << "; ";
    }
    return {ok, os.str()};
}

Outcome criterion7() {
    std::ostringstream os;
    bool ok = true;
    for (const auto& name : {"dyadic.json", "fib.json"}) {
        auto g = fixtures::load(name);
        auto gp = telescope(g, 2);
        double s = spectral_dimension(g), sp = spectral_dimension(gp);
        auto c = telescoping_lipschitz_check(g, 2, 100, 12, 7);
        bool same = std::fabs(s - sp) <= 1e-12 * s;
        ok = ok && same && c.all_pass;
        os << name << ": s0 " << s << " -> " << sp << ", d/d^2 in [" << c.c_low << ", " << c.c_high << "] bounds ["
           << c.bound_low << ", " << c.bound_high << "]; ";
    }
    return {ok, os.str()};
}

Outcome criterion8() {
    auto g = fixtures::load("dyadic.json");
    double worst = 0;
    for (int k = 1; k <= 4; ++k) {
        CircleTrigObs o;
        o.coeffs[k] = 1.0;
        ObservableFn f = o;
        worst = std::max(worst, std::fabs(qn_form(g, f, f, 20).real() - std::pow(2 * M_PI * k, 2)));
    }
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    auto fib = fixtures::load("fib.json");
    bool zero = true, markov = true;
    int markov_count = 0;
    for (int s = 0; s < 50; ++s) {
        const auto& gg = s % 2 ? fib : g;
        CylinderObs c;
        c.depth = 3;
        for (const auto& p : all_paths(gg, 3)) c.table[p] = u(rng);
        ObservableFn f = c;
        for (int n = 4; n <= 8; ++n) zero = zero && qn_form(gg, f, f, n) == C(0.0);
        bool mk = true;
        for (int n = 1; n <= 3; ++n) mk = mk && markov_check(gg, f, n);
        markov = markov && mk;
        markov_count += mk;
    }
    CircleTrigObs o;
    o.coeffs[1] = 1.0;
    auto fast = q_limit(fixtures::load("dyadic.json", 0.75), o, o, 20, 1e-3);
    auto slow = q_limit(fixtures::load("dyadic.json", 0.25), o, o, 14);
    bool tri = std::abs(fast.values.back()) < 1e-3 && !fast.diverging && slow.diverging;
    return {worst < 1e-6 && zero && markov && tri,
            fmt("max|q_20-(2 pi k)^2| %.2e (k<=4); zero beyond depth %s; Markov %d/50; rho=3/4 q_20=%.2e, rho=1/4 "
                "q_14=%.2e diverging=%s",
                worst, zero ? "yes" : "no", markov_count, std::abs(fast.values.back()),
                std::abs(slow.values.back()), slow.diverging ? "yes" : "no")};
}

Outcome criterion9() {
    auto pf = pisot_analyze(minimal_polynomial_of_pf(to_int({{1, 1}, {1, 0}})));
    double e1 = std::fabs(pf.conjugates[1].real() - (1 - std::sqrt(5.0)) / 2);
    auto pt = pisot_analyze(minimal_polynomial_of_pf(to_int({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}})));
    // Independent refinement: Newton on x^3 - x^2 - x - 1 for theta, then the complex
    // pair solves x^2 + (theta - 1) x + 1/theta = 0.
    double t = 2;
    for (int i = 0; i < 60; ++i) t -= (t * t * t - t * t - t - 1) / (3 * t * t - 2 * t - 1);
    C disc = std::sqrt(C((t - 1) * (t - 1) - 4 / t, 0));
    C z = (-(t - 1) + disc) / 2.0;
    for (int i = 0; i < 30; ++i) z -= (z * z * z - z * z - z - 1.0) / (3.0 * z * z - 2.0 * z - 1.0);
    double e2 = std::fabs(std::abs(pt.conjugates[1]) - std::abs(z));
    auto nonuni = pisot_analyze(MinPoly{{-2, -2, 1}});
    bool flags = pf.unimodular && pt.unimodular && !nonuni.unimodular;
    auto field = NumberField::make(pt);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-50, 50);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        FieldElement x(field, {mpq_class(d(rng)), mpq_class(d(rng)), mpq_class(d(rng))});
        C s = 0;
        for (int j = 0; j < 3; ++j) s += x.embed(j);
        worst = std::max(worst, std::fabs(s.real() - std::round(s.real())) + std::fabs(s.imag()));
    }
    return {e1 < 1e-12 && e2 < 1e-6 && flags && worst < 1e-8,
            fmt("Fibonacci theta_2 err %.2e; Tribonacci |theta_2| err %.2e; unimodular flags %s; Galois sums max "
                "distance to Z %.2e",
                e1, e2, flags ? "ok" : "wrong", worst)};
}

Outcome criterion10() {
    auto sub = fixtures::substitution("fibonacci_rules.json");
    auto geo = horizontal_geometry(sub);
    auto b = FieldElement::from_rational(sub.field, 1);
    auto qt = q_tr_numeric(sub, geo, b, 20, 40, std::abs(sub.pisot.conjugates[1]));
    std::vector<TileFunction> fs{{[](double x) { return x; }, [](double) { return 1.0; }},
                                 {[](double x) { return x * x; }, [](double x) { return 2 * x; }},
                                 {[](double x) { return std::sin(3 * x); }, [](double x) { return 3 * std::cos(3 * x); }}};
    double worst_lg = 0;
    for (const auto& f : fs)
        worst_lg = std::max(worst_lg, q_lg_numeric(sub, geo, 0, f, f, 12, 1 / sub.theta).rel_error);
    bool sign = true, quad = true;
    for (auto dir : {Direction::Transversal, Direction::Longitudinal})
        for (int k : {1, 2, 3}) {
            double l1 = laplacian_eigenvalue(sub, geo, b, dir);
            double lk = laplacian_eigenvalue(sub, geo, b * mpq_class(k), dir);
            sign = sign && l1 <= 0 && lk <= 0;
            quad = quad && std::fabs(lk - k * k * l1) <= 1e-12 * std::fabs(lk);
        }
    return {qt.rel_error < 1e-2 && worst_lg < 2e-2 && sign && quad,
            fmt("q_tr avg %.8f vs -Delta_tr %.8f (rel %.2e); q_lg max rel %.2e at n=12; non-positive %s, quadratic %s",
                qt.average, qt.expected, qt.rel_error, worst_lg, sign ? "yes" : "no", quad ? "yes" : "no")};
}

Outcome criterion11() {
    std::ostringstream os;
    bool ok = true;
    for (const auto& name : {"fibonacci_rules.json", "tribonacci_rules.json"}) {
        auto sub = fixtures::substitution(name);
        auto dp = dirichlet_parameters(sub);
        auto om = omega_triple(sub, dp.rho_tr, dp.rho_lg);
        auto hc = omega_heat_check(om, 1e-30, 1e-10, 60);
        double worst = 0;
        for (double t : {1e-20, 1e-12, 1e-6}) {
            double a = tensor_heat_trace(om.transversal, om.longitudinal, t);
            double b = tensor_heat_trace_double_sum(om.transversal, om.longitudinal, t);
            worst = std::max(worst, std::fabs(a - b) / b);
        }
        bool exact = om.s0 == om.s_tr + om.s_lg;
        ok = ok && exact && std::fabs(hc.slope_s0 - om.s0) <= 0.02 && worst <= 1e-12;
        os << name << ": s0=" << om.s0 << " = " << om.s_tr << " + " << om.s_lg << ", fit " << hc.slope_s0
           << ", multiplicativity " << worst << "; ";
    }
    return {ok, os.str()};
}

Outcome criterion12() {
    auto g1 = fixtures::loops(8, 0.5);
    auto g2 = fixtures::loops(64, 0.135);
    auto m1 = make_model(g1), m2 = make_model(g2);
    auto grid = default_s_grid();
    int N = 50000;
    int need = std::max(levels_needed(g1.rho, grid), levels_needed(g2.rho, grid));
    if (N < need) return {false, fmt("N=%d below the %d levels needed", N, need)};
    auto ratio = [&](double phi) {
        std::vector<C> means(N);
        for (int n = 1; n <= N; ++n) means[n - 1] = std::polar(1.0, n * phi);
        std::vector<StateWeights> num{state_weights(m1, means, N), state_weights_constant(m2, 1.0, N)};
        std::vector<StateWeights> den{state_weights_constant(m1, 1.0, N), state_weights_constant(m2, 1.0, N)};
        return laplace_ratio_state(num, den, grid, 1e-2);
    };
    double phi_res = 2 * M_PI * std::log(g1.rho) / std::log(g2.rho);
    double phi_non = 2 * M_PI * (std::sqrt(2.0) - 1) / 1.7;
    auto cr = nonresonant_phase_check(phi_res, g1.rho, g2.rho, 10);
    auto cn = nonresonant_phase_check(phi_non, g1.rho, g2.rho, 10);
    auto vr = ratio(phi_res), vn = ratio(phi_non);
    bool ok = std::abs(vn.value) <= 2e-2 && std::abs(vr.value) >= 5e-2 && cr.resonant && !cn.resonant;
    return {ok, fmt("resonant phi=%.6f |value|=%.4f (%s); non-resonant phi=%.6f |value|=%.2e (min gap %.3f)", phi_res,
                    std::abs(vr.value), cr.verdict.c_str(), phi_non, std::abs(vn.value), cn.min_gap)};
}

} // namespace

int main() {
    std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                   criterion5, criterion6, criterion7,  criterion8,
                                                   criterion9, criterion10, criterion11, criterion12};
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("Criterion %zu: %s  [%.1fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
