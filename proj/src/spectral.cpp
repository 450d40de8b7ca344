#include "bspec/spectral.hpp"

#include <algorithm>
#include <limits>

#include "bspec/gamma.hpp"
#include "bspec/kahan.hpp"
#include "bspec/parallel.hpp"

namespace bspec {

using cplx = std::complex<double>;

const char* const kResidueNote =
    "residues are reported as C^j_H/(-log rho), the value obtained from the closed form "
    "sum_k C^k lambda_k rho^z/(1 - lambda_k rho^z); the variant C^j_H lambda_j/(-log rho) "
    "disagrees with it (dyadic: 1/ln 2, not 2/ln 2)";

EdgeCounts::EdgeCounts(const BratteliGraph& g)
    : in_(g.num_vertices()), row_(g.num_vertices(), 1.0L) {
    for (const auto& e : g.edges) in_[e.range].push_back(e.source);
    for (const auto& h : g.horizontal) pair_sources_.push_back(g.pair_source(h));
}

void EdgeCounts::extend_to(int n) {
    while (static_cast<int>(logs_.size()) < n) {
        long double s = 0;
        for (int v : pair_sources_) s += row_[v];
        logs_.push_back(s > 0 ? static_cast<double>(std::log(s) + log_scale_)
                              : -std::numeric_limits<double>::infinity());
        std::vector<long double> next(row_.size(), 0.0L);
        for (size_t w = 0; w < in_.size(); ++w)
            for (int v : in_[w]) next[w] += row_[v];
        long double mx = *std::max_element(next.begin(), next.end());
        if (mx > 0) {
            for (auto& x : next) x /= mx;
            log_scale_ += std::log(mx);
        }
        row_ = std::move(next);
    }
}

double EdgeCounts::log_count(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "edge counts start at n = 1");
    extend_to(n);
    return logs_[n - 1];
}

SpectralModel make_model(const BratteliGraph& g) {
    SpectralModel m;
    m.graph = g;
    m.eigen = eigen_decompose(graph_matrix(g));
    m.log_rho = std::log(g.rho);
    m.s0 = std::log(m.eigen.pf) / -m.log_rho;
    if (m.eigen.diagonalizable)
        m.coeffs = c_coefficients(m.eigen, g);
    else
        m.warnings.push_back(
            "graph matrix is not diagonalizable: closed forms unavailable, direct series only");
    m.warnings.push_back(kResidueNote);
    return m;
}

std::vector<std::pair<double, BigInt>> dirac_spectrum(const BratteliGraph& g, int N) {
    std::vector<std::pair<double, BigInt>> out;
    for (int n = 1; n <= N; ++n) out.emplace_back(std::pow(g.rho, -n), horizontal_count(g, n));
    return out;
}

double spectral_dimension(const BratteliGraph& g) {
    return std::log(perron_frobenius(graph_matrix(g)).pf) / -std::log(g.rho);
}

cplx zeta_closed(const SpectralModel& m, cplx z) {
    if (!m.eigen.diagonalizable)
        throw Error(ErrorCode::NotDiagonalizable, "closed form needs a diagonalizable matrix");
    cplx rz = std::exp(z * m.log_rho);
    cplx total = m.coeffs.zero_term * rz;
    for (size_t j = 0; j < m.eigen.eigenvalues.size(); ++j) {
        const cplx& c = m.coeffs.c[j];
        cplx w = m.eigen.eigenvalues[j] * rz;
        if (std::abs(1.0 - w) < 1e-13) {
            if (std::abs(c) < 1e-12) continue;  // removable
            throw Error(ErrorCode::AtPole, "z is a pole of the zeta function");
        }
        total += c * w / (1.0 - w);
    }
    return total;
}

SeriesValue zeta_series(const BratteliGraph& g, cplx z, int N) {
    auto pf = perron_frobenius(graph_matrix(g));
    double s0 = std::log(pf.pf) / -std::log(g.rho);
    if (z.real() <= s0) throw Error(ErrorCode::DivergesAt, "Re z must exceed s0");
    EdgeCounts counts(g);
    Kahan<cplx> acc;
    cplx logrho = std::log(g.rho);
    for (int n = 1; n <= N; ++n) {
        double lc = counts.log_count(n);
        if (std::isinf(lc)) continue;
        acc.add(std::exp(lc + static_cast<double>(n) * z * logrho));
    }
    // #E_n <= C pf^n with C = max_v(h_v / R_v) / pf, from A^m R = pf^m R.
    std::vector<double> hv(g.num_vertices(), 0.0);
    for (const auto& h : g.horizontal) hv[g.pair_source(h)] += 1;
    double c = 0;
    for (int v = 0; v < g.num_vertices(); ++v) c = std::max(c, hv[v] / pf.R(v));
    c /= pf.pf;
    double q = pf.pf * std::pow(g.rho, z.real());
    return {acc.value(), c * std::pow(q, N + 1) / (1 - q)};
}

ZetaReport poles_and_residues(const SpectralModel& m, int kmax) {
    if (!m.eigen.diagonalizable)
        throw Error(ErrorCode::NotDiagonalizable, "poles need a diagonalizable matrix");
    ZetaReport rep;
    rep.s0 = m.s0;
    rep.period = 2 * M_PI / -m.log_rho;
    rep.warnings = m.warnings;
    for (size_t j = 0; j < m.eigen.eigenvalues.size(); ++j) {
        cplx lam = m.eigen.eigenvalues[j];
        rep.closed_form_coeffs.emplace_back(m.coeffs.c[j], lam);
        if (std::abs(lam) < 1e-12) continue;
        for (int k = -kmax; k <= kmax; ++k) {
            Pole p;
            p.location = (std::log(lam) + cplx(0, 2 * M_PI * k)) / -m.log_rho;
            p.residue = m.coeffs.c[j] / -m.log_rho;
            p.eigen_index = static_cast<int>(j);
            p.k = k;
            rep.poles.push_back(p);
        }
    }
    return rep;
}

cplx numeric_residue(const SpectralModel& m, cplx z0, double h) {
    return h * zeta_closed(m, z0 + h);
}

cplx frak_f(double r, cplx a, double sigma, int K) {
    double sig = sigma - r * std::floor(sigma / r);
    cplx s = 0;
    for (int k = -K; k <= K; ++k) {
        cplx arg = a / r + cplx(0, 2 * M_PI * k / r);
        s += complex_gamma(arg) * std::polar(1.0, 2 * M_PI * k * sig / r);
    }
    return s / r;
}

double heat_trace_direct(const BratteliGraph& g, EdgeCounts& counts, double t, double eps) {
    if (!(t > 0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
    double lr = -2 * std::log(g.rho);
    Kahan<double> acc;
    double prev = 0;
    for (int n = 1; n < 100000; ++n) {
        double lc = counts.log_count(n);
        if (std::isinf(lc)) return 0;
        double expo = t * std::exp(n * lr);
        double term = std::exp(lc - expo);
        acc.add(term);
        // Past the peak the ratio of successive terms falls super-exponentially,
        // so the remaining tail is below twice the current term.
        if (n > 1 && term < prev && expo > 1 && term <= 0.1 * eps * acc.value()) break;
        prev = term;
    }
    return acc.value();
}

double heat_trace_direct(const BratteliGraph& g, double t, double eps) {
    EdgeCounts counts(g);
    return heat_trace_direct(g, counts, t, eps);
}

double heat_trace_expansion(const SpectralModel& m, double t, int K) {
    if (!m.eigen.diagonalizable)
        throw Error(ErrorCode::NotDiagonalizable, "expansion needs a diagonalizable matrix");
    double r = -2 * m.log_rho;
    double sigma = -std::log(t);
    cplx total = 0;
    for (size_t j = 0; j < m.eigen.eigenvalues.size(); ++j) {
        cplx lam = m.eigen.eigenvalues[j];
        const cplx& c = m.coeffs.c[j];
        if (std::abs(lam) > 1 + 1e-12) {
            cplx a = std::log(lam);
            total += c * frak_f(r, a, sigma, K) * std::exp(-a / r * std::log(t));
        } else if (std::abs(lam - 1.0) < 1e-9) {
            total += c * sigma / r;
        }
    }
    return total.real();
}

HeatTraceReport heat_trace_sweep(const SpectralModel& m, const std::vector<double>& ts, double eps,
                                 int K) {
    HeatTraceReport rep;
    rep.t = ts;
    rep.period = -2 * m.log_rho;
    rep.leading_exponent = std::log(m.eigen.pf) / (2 * m.log_rho);
    size_t n = ts.size();
    rep.direct.assign(n, 0);
    rep.expansion.assign(n, std::numeric_limits<double>::quiet_NaN());
    rep.residual.assign(n, std::numeric_limits<double>::quiet_NaN());
    parallel_for(n, [&](size_t i) {
        rep.direct[i] = heat_trace_direct(m.graph, ts[i], eps);
        if (m.eigen.diagonalizable && ts[i] < 1) {
            rep.expansion[i] = heat_trace_expansion(m, ts[i], K);
            rep.residual[i] = rep.direct[i] - rep.expansion[i];
        }
    });
    return rep;
}

double spectral_measure(const SpectralModel& m, const std::vector<int>& gamma) {
    if (gamma.empty() || !is_valid_path(m.graph, gamma))
        throw Error(ErrorCode::InvalidArgument, "cylinder word must be a nonempty path");
    int v = m.graph.edges[gamma.back()].range;
    return std::pow(m.eigen.pf, -static_cast<double>(gamma.size())) * m.eigen.R(v);
}

namespace {

// (1/#E_n) sum over E_n of obs(s(e)), by enumeration.
cplx level_mean_enumerated(const BratteliGraph& g, const ObservableFn& obs, int n) {
    Kahan<cplx> acc;
    double count = 0;
    for_each_horizontal(g, n, [&](const std::vector<int>& prefix, int hi) {
        auto w = prefix;
        w.push_back(g.horizontal[hi].from);
        acc.add(evaluate(g, obs, w));
        count += 1;
    });
    return count > 0 ? acc.value() / count : cplx(0);
}

// Level means of a cylinder observable; closed counting formula once n > depth.
std::vector<cplx> cylinder_means(const SpectralModel& m, const CylinderObs& c, int N) {
    const auto& g = m.graph;
    int k = c.depth;
    int nv = g.num_vertices();
    std::vector<cplx> tw(nv, 0.0);
    for (const auto& [path, val] : c.table) {
        if (path.empty()) {
            for (auto& x : tw) x += val;
        } else {
            tw[g.edges[path.back()].range] += val;
        }
    }
    // col[m] = A^m h / exp(scale[m]) with h_v = number of pairs with source v.
    std::vector<std::vector<long double>> col;
    std::vector<long double> scale;
    std::vector<long double> h(nv, 0.0L);
    for (const auto& p : g.horizontal) h[g.pair_source(p)] += 1;
    col.push_back(h);
    scale.push_back(0);
    auto out = g.out_edges();
    while (static_cast<int>(col.size()) < N) {
        const auto& prev = col.back();
        std::vector<long double> next(nv, 0.0L);
        for (int v = 0; v < nv; ++v)
            for (int e : out[v]) next[v] += prev[g.edges[e].range];
        long double mx = *std::max_element(next.begin(), next.end());
        for (auto& x : next) x /= mx;
        col.push_back(next);
        scale.push_back(scale.back() + std::log(mx));
    }
    std::vector<cplx> means;
    for (int n = 1; n <= N; ++n) {
        if (n <= k || k == 0) {
            if (k == 0) {
                means.push_back(tw[0]);
                continue;
            }
            means.push_back(level_mean_enumerated(g, c, n));
            continue;
        }
        const auto& num = col[n - 1 - k];
        const auto& den = col[n - 1];
        cplx s = 0;
        long double d = 0;
        for (int v = 0; v < nv; ++v) {
            s += tw[v] * static_cast<double>(num[v]);
            d += den[v];
        }
        double f = static_cast<double>(std::exp(scale[n - 1 - k] - scale[n - 1]) / d);
        means.push_back(s * f);
    }
    return means;
}

} // namespace

CesaroResult cesaro_from_means(std::vector<double> means, double tol) {
    CesaroResult res;
    res.means = std::move(means);
    if (res.means.empty()) return res;
    res.value = res.means.back();
    size_t n = res.means.size();
    double worst = 0;
    for (size_t i = n >= 5 ? n - 4 : 1; i < n; ++i) {
        double d = std::fabs(res.means[i] - res.means[i - 1]);
        res.cauchy_diffs.push_back(d);
        worst = std::max(worst, d);
    }
    res.converged = n >= 5 && worst <= tol * std::max(1.0, std::fabs(res.value));
    return res;
}

CesaroResult state_cesaro(const SpectralModel& m, const ObservableFn& obs, int N, double tol) {
    std::vector<double> means;
    if (const auto* c = std::get_if<CylinderObs>(&obs)) {
        for (const auto& v : cylinder_means(m, *c, N)) means.push_back(v.real());
    } else {
        EdgeCounts counts(m.graph);
        for (int n = 1; n <= N; ++n) {
            if (counts.log_count(n) > std::log(5e6))
                throw Error(ErrorCode::DepthExceeded, "level too large for enumeration");
            means.push_back(level_mean_enumerated(m.graph, obs, n).real());
        }
    }
    return cesaro_from_means(std::move(means), tol);
}

StateWeights state_weights(const SpectralModel& m, const std::vector<cplx>& means, int N) {
    StateWeights w;
    w.rho = m.graph.rho;
    w.log_pf = std::log(m.eigen.pf);
    EdgeCounts counts(m.graph);
    for (int n = 1; n <= N; ++n) w.log_counts.push_back(counts.log_count(n));
    w.means = means;
    w.means.resize(N, means.empty() ? cplx(0) : means.back());
    return w;
}

StateWeights state_weights_constant(const SpectralModel& m, cplx c, int N) {
    return state_weights(m, std::vector<cplx>(N, c), N);
}

StateWeights state_weights_cylinder(const SpectralModel& m, const std::vector<int>& gamma, int N) {
    return state_weights(m, cylinder_means(m, cylinder_indicator(m.graph, gamma), N), N);
}

cplx weighted_profile(const StateWeights& w, double x) {
    double r = -2 * std::log(w.rho);
    double alpha = w.log_pf / r;
    int N = static_cast<int>(w.means.size());
    int lo = std::max(1, static_cast<int>(std::floor((x - 40.0 / alpha) / r)));
    int hi = static_cast<int>(std::ceil((x + 4.0) / r));
    cplx s = 0;
    for (int n = lo; n <= hi; ++n) {
        double lc;
        cplx a;
        if (n <= N) {
            lc = w.log_counts[n - 1];
            a = w.means[n - 1];
        } else {
            lc = w.log_counts[N - 1] + (n - N) * w.log_pf;
            a = w.means[N - 1];
        }
        double u = n * r - x;
        s += a * std::exp(lc - n * w.log_pf + alpha * u - std::exp(u));
    }
    return s;
}

std::vector<double> default_s_grid(int levels) {
    std::vector<double> s;
    double v = 1e-2;
    for (int i = 0; i < levels; ++i, v *= 0.5) s.push_back(v);
    return s;
}

int levels_needed(double rho, const std::vector<double>& s_grid) {
    double smin = *std::min_element(s_grid.begin(), s_grid.end());
    return static_cast<int>(std::ceil((40.0 / smin + 4.0) / (-2 * std::log(rho)))) + 1;
}

LaplaceRatio laplace_ratio_state(const std::vector<StateWeights>& num,
                                 const std::vector<StateWeights>& den,
                                 const std::vector<double>& s_grid, double tol) {
    if (num.empty() || den.empty() || s_grid.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "need factors and at least three s values");
    double rmin = std::numeric_limits<double>::infinity();
    for (const auto* side : {&num, &den})
        for (const auto& w : *side) rmin = std::min(rmin, -2 * std::log(w.rho));
    double smin = *std::min_element(s_grid.begin(), s_grid.end());
    double h = rmin / 40;
    size_t npts = static_cast<size_t>(std::ceil(40.0 / smin / h));
    npts += npts % 2;  // Simpson needs an even number of intervals
    std::vector<cplx> fa(npts + 1), f1(npts + 1);
    parallel_for(npts + 1, [&](size_t i) {
        double x = i * h;
        cplx a = 1, b = 1;
        for (const auto& w : num) a *= weighted_profile(w, x);
        for (const auto& w : den) b *= weighted_profile(w, x);
        fa[i] = a;
        f1[i] = b;
    });
    LaplaceRatio res;
    for (double s : s_grid) {
        size_t m = static_cast<size_t>(std::ceil(40.0 / s / h));
        m = std::min(npts, m + m % 2);
        Kahan<cplx> ia;
        Kahan<double> i1;
        for (size_t i = 0; i <= m; ++i) {
            double wgt = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
            double e = wgt * std::exp(-s * i * h);
            ia.add(e * fa[i]);
            i1.add(e * f1[i].real());
        }
        res.raw.emplace_back(s, ia.value() / i1.value());
    }
    // Two-point Richardson on consecutive halvings removes the O(s) term.
    std::vector<cplx> ext;
    for (size_t i = 0; i + 1 < res.raw.size(); ++i) {
        double s0 = res.raw[i].first, s1 = res.raw[i + 1].first;
        double q = s0 / s1;
        ext.push_back((q * res.raw[i + 1].second - res.raw[i].second) / (q - 1));
    }
    res.value = ext.back();
    res.spread = std::abs(ext.back() - ext[ext.size() - 2]);
    if (res.spread > tol)
        throw Error(ErrorCode::InsufficientDecay,
                    "Laplace ratio spread " + std::to_string(res.spread) + " exceeds tolerance");
    return res;
}

LaplaceRatio laplace_ratio_state(const StateWeights& num, const StateWeights& den,
                                 const std::vector<double>& s_grid, double tol) {
    return laplace_ratio_state(std::vector<StateWeights>{num}, std::vector<StateWeights>{den},
                               s_grid, tol);
}

namespace {

// Nonnegligible terms #E_n e^{-t rho^{-2n}}, in order of n.
std::vector<double> heat_terms(const BratteliGraph& g, double t, double eps) {
    EdgeCounts counts(g);
    double lr = -2 * std::log(g.rho);
    std::vector<double> terms;
    double sum = 0, prev = 0;
    for (int n = 1; n < 100000; ++n) {
        double lc = counts.log_count(n);
        if (std::isinf(lc)) break;
        double expo = t * std::exp(n * lr);
        double term = std::exp(lc - expo);
        terms.push_back(term);
        sum += term;
        if (n > 1 && term < prev && expo > 1 && term <= 0.1 * eps * sum) break;
        prev = term;
    }
    return terms;
}

} // namespace

double tensor_heat_trace(const BratteliGraph& g1, const BratteliGraph& g2, double t, double eps) {
    return heat_trace_direct(g1, t, eps) * heat_trace_direct(g2, t, eps);
}

double tensor_heat_trace_double_sum(const BratteliGraph& g1, const BratteliGraph& g2, double t,
                                    double eps) {
    auto a = heat_terms(g1, t, eps);
    auto b = heat_terms(g2, t, eps);
    Kahan<double> acc;
    for (double x : a)
        for (double y : b) acc.add(x * y);
    return acc.value();
}

ResonanceCheck nonresonant_phase_check(double phi, double rho, double rho_prime, long kmax,
                                       double tol) {
    double kappa = std::log(rho) / std::log(rho_prime);
    ResonanceCheck res;
    res.min_gap = std::numeric_limits<double>::infinity();
    for (long i = 0; i <= 2 * kmax; ++i) {
        long kp = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;  // 0, -1, 1, -2, 2, ...
        double v = phi + 2 * M_PI * kappa * static_cast<double>(kp);
        long k = std::lround(-v / (2 * M_PI));
        k = std::clamp(k, -kmax, kmax);
        double gap = std::fabs(v + 2 * M_PI * static_cast<double>(k));
        if (gap < res.min_gap) {
            res.min_gap = gap;
            res.k = k;
            res.k_prime = kp;
        }
    }
    res.resonant = res.min_gap < tol;
    res.verdict = res.resonant ? "resonant at (" + std::to_string(res.k) + "," +
                                     std::to_string(res.k_prime) + ")"
                               : "non-resonant up to " + std::to_string(kmax);
    return res;
}

double direct_sum_state(double c1, double c2, double t1, double t2) {
    if (c1 < 0 || c2 < 0) throw Error(ErrorCode::InvalidArgument, "residues must be non-negative");
    if (c1 == 0 && c2 == 0) throw Error(ErrorCode::BothResiduesZero, "both residues vanish");
    return (c1 * t1 + c2 * t2) / (c1 + c2);
}

} // namespace bspec
