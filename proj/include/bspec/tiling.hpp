#ifndef BSPEC_TILING_HPP
#define BSPEC_TILING_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bspec/graph.hpp"
#include "bspec/numberfield.hpp"
#include "bspec/spectral.hpp"

namespace bspec {

struct SubstitutionRules {
    std::vector<std::string> alphabet;
    std::vector<std::vector<int>> words;  // words[v] = sigma(alphabet[v]) as letter indices
    // Optional explicit pairs of edge ids; empty means the maximal set.
    std::vector<std::pair<std::string, std::string>> h_tr, h_lg;
};

// Substitution graph: one edge u -> v with id "v:k" for the letter u at index k of sigma(v).
struct Substitution1D {
    SubstitutionRules rules;
    BratteliGraph graph;      // default tau, maximal H, rho left at 0.5
    IntMatrix matrix;         // A_{uv} = occurrences of u in sigma(v)
    double theta = 0;
    PisotData pisot;          // degree 1 when theta is rational
    std::shared_ptr<const NumberField> field;
    std::vector<FieldElement> length;  // L_v, left Perron-Frobenius vector
    std::vector<FieldElement> freq;    // R_v, right Perron-Frobenius vector
    std::vector<double> length_d, freq_d;
    std::vector<FieldElement> pos;     // per edge: left endpoint of its letter inside sigma(v)
    std::vector<double> pos_d;

    int num_letters() const { return static_cast<int>(rules.alphabet.size()); }
    FieldElement zero() const { return FieldElement::from_rational(field, 0); }
};

// Builds graph, theta, lengths and frequencies, normalized so that
// sum R_v = 1 and sum R_v L_v = 1. Throws NonPrimitive.
Substitution1D build_substitution(const SubstitutionRules& rules);

// Left endpoints of the level-0 tiles of sigma^n(letter), by concatenation.
std::vector<std::pair<int, FieldElement>> supertile_offsets(const Substitution1D& sub, int letter,
                                                            int n);

// Offset of the level-0 tile reached by the upward path e_1..e_n inside its
// level-n supertile: sum theta^{i-1} pos(e_i).
FieldElement path_offset(const Substitution1D& sub, const std::vector<int>& path);

struct ReturnVector {
    HorizontalPair pair;
    int depth = 0;         // n_h
    FieldElement r;        // translation from the tile of pair.from to that of pair.to
};

struct MicrotileVector {
    HorizontalPair pair;   // edges of the substitution graph sharing their range
    FieldElement a;        // puncture of pair.to minus puncture of pair.from
};

std::vector<ReturnVector> return_vectors(const Substitution1D& sub,
                                         const std::vector<HorizontalPair>& h_tr);

// Puncture of the microtile selected by the reversed path starting with edge e and
// continued by the reversed-graph tau, in coordinates of the tile of type range(e).
FieldElement microtile_point(const Substitution1D& sub, const BratteliGraph& rev, int e);

std::vector<MicrotileVector> microtile_vectors(const Substitution1D& sub, const BratteliGraph& rev,
                                               const std::vector<HorizontalPair>& h_lg);

// Reversed substitution graph with its default tau.
BratteliGraph reversed_graph(const Substitution1D& sub);

// H_tr and H_lg from the rules (explicit) or maximal; H_lg is expressed on the
// reversed graph, whose edge indices coincide with those of the substitution graph.
std::vector<HorizontalPair> transversal_pairs(const Substitution1D& sub);
std::vector<HorizontalPair> longitudinal_pairs(const Substitution1D& sub);

struct HorizontalGeometry {
    std::vector<ReturnVector> tr;
    std::vector<MicrotileVector> lg;
    FieldElement c_tr, c_lg;
    FieldElement K;  // sum_h R_{s^2 h} a_h^2
    // R_{s^2 h} per pair: source vertex for tr, range vertex (in the substitution graph) for lg.
    std::vector<int> tr_vertex, lg_vertex;
};

HorizontalGeometry horizontal_geometry(const Substitution1D& sub);

struct OmegaTriple {
    BratteliGraph transversal;   // substitution graph, rho_tr, H_tr
    BratteliGraph longitudinal;  // reversed graph, rho_lg, H_lg
    double rho_tr = 0, rho_lg = 0;
    double s_tr = 0, s_lg = 0, s0 = 0;
};

OmegaTriple omega_triple(const Substitution1D& sub, double rho_tr, double rho_lg);

struct OmegaHeatCheck {
    double slope_s0 = 0;      // -2 d log Z / d log t from a least-squares fit
    double heat_coefficient = 0;  // mean of t^{s0/2} Z(t) over the grid
    bool positive = false;
    std::vector<double> t, trace;
};

// Tensor heat trace on a logarithmic grid in [t_min, t_max].
OmegaHeatCheck omega_heat_check(const OmegaTriple& o, double t_min, double t_max, int points);

struct DirichletParameters {
    double rho_tr = 0, rho_lg = 0;
    std::vector<ResonanceCheck> checks;  // one per ordered pair j != j' <= L
    bool nonresonant = true;
    double min_gap = 0;
    std::string verdict;
};

DirichletParameters dirichlet_parameters(const Substitution1D& sub, long kmax = 10000);

enum class Direction { Transversal, Longitudinal };

// Eigenvalue of the Laplacian on f_beta, with beta(x) = b x for x in Q(theta).
double laplacian_eigenvalue(const Substitution1D& sub, const HorizontalGeometry& geo,
                            const FieldElement& b, Direction which);

// c_tr sum_h R |exp(2 pi i beta(r_h) theta^n) - 1|^2 / rho^{2n}, with the phase
// reduced through the trace so that large n stays accurate.
double q_tr_term(const Substitution1D& sub, const HorizontalGeometry& geo, const FieldElement& b,
                 int n, double rho);

struct QTrReport {
    std::vector<double> values;  // q_{tr,n} for n in the window
    double average = 0;
    double expected = 0;         // -laplacian_eigenvalue(tr)
    double rel_error = 0;
};

// Requires rho = |theta_2|, else ParameterMismatch.
QTrReport q_tr_numeric(const Substitution1D& sub, const HorizontalGeometry& geo,
                       const FieldElement& b, int n_lo, int n_hi, double rho);

struct TileFunction {
    std::function<double(double)> f, df;
};

// q_{lg,n} on tile v by enumeration of the level-n microtiles: mean over pairs of
// (f(x') - f(x)) (g(x') - g(x)) / rho^{2n}. No check on rho.
double q_lg_term(const Substitution1D& sub, const HorizontalGeometry& geo, const BratteliGraph& rev,
                 int v, const TileFunction& f, const TileFunction& g, int n, double rho);

// c_lg K-form: c_lg sum_h R a_h^2 times the normalized integral of f' g' over tile v.
double lg_form(const Substitution1D& sub, const HorizontalGeometry& geo, int v,
               const TileFunction& f, const TileFunction& g);

struct QLgReport {
    double numeric = 0;
    double form = 0;
    double rel_error = 0;
};

// Requires rho = 1/theta, else ParameterMismatch.
QLgReport q_lg_numeric(const Substitution1D& sub, const HorizontalGeometry& geo, int v,
                       const TileFunction& f, const TileFunction& g, int n, double rho);

// Letter frequencies counted in sigma^n(letter).
std::vector<double> empirical_frequencies(const Substitution1D& sub, int letter, int n);

} // namespace bspec

#endif
