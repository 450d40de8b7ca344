#ifndef BSPEC_SPECTRAL_HPP
#define BSPEC_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bspec/eigen.hpp"
#include "bspec/graph.hpp"
#include "bspec/observable.hpp"

namespace bspec {

// Edge counts #E_n in floating point with a running log scale, so that
// arbitrarily deep levels stay representable.
class EdgeCounts {
public:
    explicit EdgeCounts(const BratteliGraph& g);
    double log_count(int n);
    double count(int n) { return std::exp(log_count(n)); }

private:
    void extend_to(int n);
    std::vector<std::vector<int>> in_;  // in_[w]: sources of edges into w, with repetition
    std::vector<int> pair_sources_;
    std::vector<long double> row_;      // 1^T A^{m} / scale
    long double log_scale_ = 0;
    std::vector<double> logs_;          // logs_[n-1] = log #E_n
};

// Everything the closed forms need, computed once per graph.
struct SpectralModel {
    BratteliGraph graph;
    EigenData eigen;
    CCoefficients coeffs;  // empty when not diagonalizable
    double s0 = 0;
    double log_rho = 0;
    std::vector<std::string> warnings;
};

SpectralModel make_model(const BratteliGraph& g);

std::vector<std::pair<double, BigInt>> dirac_spectrum(const BratteliGraph& g, int N);

double spectral_dimension(const BratteliGraph& g);

std::complex<double> zeta_closed(const SpectralModel& m, std::complex<double> z);

struct SeriesValue {
    std::complex<double> value;
    double tail_bound = 0;
};
SeriesValue zeta_series(const BratteliGraph& g, std::complex<double> z, int N);

struct Pole {
    std::complex<double> location;
    std::complex<double> residue;
    int eigen_index = 0;
    int k = 0;
};

struct ZetaReport {
    double s0 = 0;
    std::vector<Pole> poles;
    double period = 0;  // imaginary period 2 pi / log(1/rho)
    std::vector<std::pair<std::complex<double>, std::complex<double>>> closed_form_coeffs;
    std::vector<std::string> warnings;
};

ZetaReport poles_and_residues(const SpectralModel& m, int kmax);
// (z - z0) zeta_closed(z) at z = z0 + h.
std::complex<double> numeric_residue(const SpectralModel& m, std::complex<double> z0,
                                     double h = 1e-6);

extern const char* const kResidueNote;

// (1/r) sum_{|k|<=K} Gamma(a/r + 2 pi i k/r) e^{2 pi i k sigma/r}
std::complex<double> frak_f(double r, std::complex<double> a, double sigma, int K = 40);

double heat_trace_direct(const BratteliGraph& g, double t, double eps = 1e-15);
double heat_trace_direct(const BratteliGraph& g, EdgeCounts& counts, double t, double eps);
double heat_trace_expansion(const SpectralModel& m, double t, int K = 40);

struct HeatTraceReport {
    std::vector<double> t, direct, expansion, residual;
    double period = 0;
    double leading_exponent = 0;
};
HeatTraceReport heat_trace_sweep(const SpectralModel& m, const std::vector<double>& ts,
                                 double eps, int K);

// mu([gamma]) = pf^{-|gamma|} R_{r(gamma)}
double spectral_measure(const SpectralModel& m, const std::vector<int>& gamma);

struct CesaroResult {
    double value = 0;
    std::vector<double> means;         // A_n for n = 1..N
    std::vector<double> cauchy_diffs;  // |A_n - A_{n-1}| over the last 5 levels
    bool converged = false;
};
// Diagnostics for a given sequence of level means.
CesaroResult cesaro_from_means(std::vector<double> means, double tol = 1e-6);
CesaroResult state_cesaro(const SpectralModel& m, const ObservableFn& obs, int N,
                          double tol = 1e-6);

// Per-level data of a diagonal observable: means A_n and log #E_n.
struct StateWeights {
    std::vector<std::complex<double>> means;
    std::vector<double> log_counts;
    double rho = 0.5;
    double log_pf = 0;
};

StateWeights state_weights(const SpectralModel& m, const std::vector<std::complex<double>>& means,
                           int N);
StateWeights state_weights_constant(const SpectralModel& m, std::complex<double> c, int N);
StateWeights state_weights_cylinder(const SpectralModel& m, const std::vector<int>& gamma, int N);

struct LaplaceRatio {
    std::complex<double> value;
    double spread = 0;
    std::vector<std::pair<double, std::complex<double>>> raw;  // (s, ratio)
};

std::vector<double> default_s_grid(int levels = 5);
// Levels a weight sequence must cover for the smallest s of the grid; beyond its
// last level a profile reuses the final mean.
int levels_needed(double rho, const std::vector<double>& s_grid);

// lim_{s->0+} L[f_A](s) / L[f_1](s); each side is a product of factors
// (one factor per tensor leg). Throws InsufficientDecay when spread > tol.
LaplaceRatio laplace_ratio_state(const std::vector<StateWeights>& num,
                                 const std::vector<StateWeights>& den,
                                 const std::vector<double>& s_grid, double tol = 1e-2);
LaplaceRatio laplace_ratio_state(const StateWeights& num, const StateWeights& den,
                                 const std::vector<double>& s_grid, double tol = 1e-2);

// f(x) = t^{s0/2} sum_n A_n #E_n e^{-t rho^{-2n}} at t = e^{-x}.
std::complex<double> weighted_profile(const StateWeights& w, double x);

double tensor_heat_trace(const BratteliGraph& g1, const BratteliGraph& g2, double t,
                         double eps = 1e-15);
double tensor_heat_trace_double_sum(const BratteliGraph& g1, const BratteliGraph& g2, double t,
                                    double eps = 1e-15);

struct ResonanceCheck {
    bool resonant = false;
    long k = 0, k_prime = 0;
    double min_gap = 0;
    std::string verdict;
};
ResonanceCheck nonresonant_phase_check(double phi, double rho, double rho_prime, long kmax,
                                       double tol = 1e-9);

double direct_sum_state(double c1, double c2, double t1, double t2);

} // namespace bspec

#endif
