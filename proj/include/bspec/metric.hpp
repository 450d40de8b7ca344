#ifndef BSPEC_METRIC_HPP
#define BSPEC_METRIC_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "bspec/graph.hpp"

namespace bspec {

struct DistanceResult {
    double value = 0;
    double tail_bound = 0;  // bound on the levels beyond the inspected depth
    int n_xy = 0;           // first differing position (1-based), 0 if equal
    int c_xy = 0;           // H-path length between the differing edges
};

// Closed formula on words tau-extended to depth N:
//   c_xy rho^{n_xy} + sum_{m > n_xy} (delta_m(x) + delta_m(y)) rho^m,
// where delta_m(z) is the H-path length from tau(z_{m-1}) to z_m.
DistanceResult connes_distance(const BratteliGraph& g, const PathWord& x, const PathWord& y, int N);
DistanceResult connes_distance(const BratteliGraph& g, const HDistance& hd, const PathWord& x,
                               const PathWord& y, int N);

// Shortest path on the level-N approximation graph: nodes are length-N words, and
// for every level n a pair (eps, eps') in H joins the tau-extensions of
// gamma eps and gamma eps' with length rho^n.
double geodesic_oracle(const BratteliGraph& g, const PathWord& x, const PathWord& y, int N);

struct LipschitzCheck {
    double c_low = 0;   // min of d / d^p over the samples
    double c_high = 0;  // max of d / d^p
    double bound_low = 1;
    double bound_high = 1;  // rho^{1-p}
    bool all_pass = false;
    int samples = 0;
};

// Compares d on g with d^p on telescope(g, p) for random pairs of words of length
// depth (rounded up to a multiple of p). Expected: d^p <= d <= rho^{1-p} d^p.
LipschitzCheck telescoping_lipschitz_check(const BratteliGraph& g, int p, int samples, int depth,
                                           std::uint64_t seed);

// Uniformly random path of length n from vertex v.
std::vector<int> random_path(const BratteliGraph& g, int v, int n, std::mt19937_64& rng);

// Regroups a word of length p*m into m blocks of the telescoped graph.
PathWord to_telescoped(const BratteliGraph& g, const BratteliGraph& gp, int p, const PathWord& w);

} // namespace bspec

#endif
