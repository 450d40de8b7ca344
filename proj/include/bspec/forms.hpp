#ifndef BSPEC_FORMS_HPP
#define BSPEC_FORMS_HPP

#include <complex>
#include <vector>

#include "bspec/graph.hpp"
#include "bspec/observable.hpp"

namespace bspec {

// (1/#E_n) sum_{e in E_n} conj(delta_e f) delta_e h, with
// delta_e f = (f(r(e)) - f(s(e))) / rho^n on tau-extended endpoints.
std::complex<double> qn_form(const BratteliGraph& g, const ObservableFn& f, const ObservableFn& h,
                             int n);

struct FormReport {
    std::vector<std::complex<double>> values;  // q_1 .. q_N
    std::complex<double> limit;
    bool converged = false;
    bool diverging = false;
    std::vector<double> cauchy_diffs;  // last 4 terms
};

FormReport q_limit(const BratteliGraph& g, const ObservableFn& f, const ObservableFn& h, int N,
                   double rel_tol = 1e-6);
// Same diagnostics on a precomputed sequence.
FormReport analyze_sequence(std::vector<std::complex<double>> values, double rel_tol = 1e-6);

// Smooth unit contraction onto [-eps, 1 + eps], identity on [0, 1].
double markov_clip(double t, double eps);

// q_n(clip(f), clip(f)) <= q_n(f, f)
bool markov_check(const BratteliGraph& g, const ObservableFn& f, int n, double eps = 1e-3);

} // namespace bspec

#endif
