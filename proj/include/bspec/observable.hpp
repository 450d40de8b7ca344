#ifndef BSPEC_OBSERVABLE_HPP
#define BSPEC_OBSERVABLE_HPP

#include <gmpxx.h>

#include <complex>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "bspec/graph.hpp"

namespace bspec {

// Function of the first `depth` edges; must be total on paths of that length.
struct CylinderObs {
    int depth = 0;
    std::map<std::vector<int>, std::complex<double>> table;
};

// Arbitrary evaluator on tau-extended words of length `depth`.
struct SampledObs {
    int depth = 0;
    std::function<std::complex<double>(const std::vector<int>&)> fn;
};

// Trigonometric polynomial sum c_k e^{2 pi i k x} pulled back by circle_embed.
struct CircleTrigObs {
    std::map<int, std::complex<double>> coeffs;
};

// Eigenfunction with frequency beta in Q(theta); only the tiling module evaluates these.
struct EigenFnObs {
    std::vector<mpq_class> beta;
};

using ObservableFn = std::variant<CylinderObs, SampledObs, CircleTrigObs, EigenFnObs>;

// Indicator of the cylinder [gamma].
CylinderObs cylinder_indicator(const BratteliGraph& g, const std::vector<int>& gamma);

// Number of leading edges the observable looks at.
int observable_depth(const ObservableFn& f);

// Evaluates f at the tau-extension of `word`.
std::complex<double> evaluate(const BratteliGraph& g, const ObservableFn& f,
                              const std::vector<int>& word);

// x = sum_i gamma_i 2^{-i} on a one-vertex, two-loop graph (digit = edge index).
double circle_embed(const BratteliGraph& g, const std::vector<int>& word);

} // namespace bspec

#endif
