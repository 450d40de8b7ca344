#ifndef BSPEC_EIGEN_HPP
#define BSPEC_EIGEN_HPP

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "bspec/graph.hpp"
#include "bspec/poly.hpp"

namespace bspec {

using cplx = std::complex<double>;

struct EigenData {
    // Distinct eigenvalues, ordered by descending modulus then ascending argument.
    std::vector<cplx> eigenvalues;
    std::vector<int> multiplicity;
    // right[j][l], left[j][l]: bases of the j-th eigenspace, biorthonormal (bilinear).
    std::vector<std::vector<Eigen::VectorXcd>> right, left;
    double pf = 0;
    Eigen::VectorXd R, L;  // sum(R) = 1, R.L = 1
    bool diagonalizable = true;
    IntPoly charpoly;
    Eigen::MatrixXd matrix;

    int pf_index() const { return 0; }
};

struct PerronFrobenius {
    double pf = 0;
    Eigen::VectorXd R, L;
};

EigenData eigen_decompose(const IntMatrix& a);
PerronFrobenius perron_frobenius(const IntMatrix& a);

// C^j_H per distinct eigenvalue. The zero eigenvalue has no 1/lambda factor; its
// contribution to #E_n, present only at n = 1, is returned separately as zero_term.
struct CCoefficients {
    std::vector<cplx> c;
    cplx zero_term = 0;
};

CCoefficients c_coefficients(const EigenData& ed, const BratteliGraph& g);
// #E_n reconstructed from the coefficients.
cplx edge_count_from_coefficients(const EigenData& ed, const CCoefficients& cc, int n);

} // namespace bspec

#endif
