#include "bspec/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace bspec {

namespace {

Eigen::MatrixXcd kernel(const Eigen::MatrixXcd& m, double thresh) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int n = static_cast<int>(m.cols());
    int k = 0;
    for (int i = n - 1; i >= 0 && s(i) <= thresh; --i) ++k;
    return svd.matrixV().rightCols(k);
}

bool before(const cplx& a, const cplx& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (std::fabs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb))) return ma > mb;
    return std::arg(a) < std::arg(b);
}

} // namespace

EigenData eigen_decompose(const IntMatrix& a) {
    int n = a.dim();
    if (n > 64) throw Error(ErrorCode::TooLarge, "matrix dimension exceeds 64");
    auto prim = is_primitive(a);
    if (!prim.primitive) throw Error(ErrorCode::NonPrimitive, prim.certificate);

    EigenData ed;
    ed.charpoly = charpoly(a);
    ed.matrix.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ed.matrix(i, j) = a(i, j).get_d();

    std::vector<std::pair<cplx, int>> roots;
    for (const auto& [f, m] : squarefree(to_rat(ed.charpoly)))
        for (const auto& r : poly_roots(f)) roots.emplace_back(r, m);
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return before(x.first, y.first); });
    for (const auto& [r, m] : roots) {
        ed.eigenvalues.push_back(r);
        ed.multiplicity.push_back(m);
    }

    double norm = std::max(1.0, ed.matrix.norm());
    double thresh = 1e-8 * norm;
    Eigen::MatrixXcd ac = ed.matrix.cast<cplx>();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (size_t j = 0; j < ed.eigenvalues.size(); ++j) {
        Eigen::MatrixXcd shifted = ac - ed.eigenvalues[j] * id;
        Eigen::MatrixXcd rb = kernel(shifted, thresh);
        Eigen::MatrixXcd lb = kernel(shifted.transpose(), thresh);
        int geo = static_cast<int>(std::min(rb.cols(), lb.cols()));
        if (geo != ed.multiplicity[j] || rb.cols() != lb.cols()) ed.diagonalizable = false;
        rb = rb.leftCols(geo).eval();
        lb = lb.leftCols(geo).eval();
        if (geo > 0) {
            Eigen::MatrixXcd gram = lb.transpose() * rb;
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
            if (lu.isInvertible()) lb = (lb * lu.inverse().transpose()).eval();
            else ed.diagonalizable = false;
        }
        std::vector<Eigen::VectorXcd> rv, lv;
        for (int l = 0; l < geo; ++l) {
            rv.push_back(rb.col(l));
            lv.push_back(lb.col(l));
        }
        ed.right.push_back(std::move(rv));
        ed.left.push_back(std::move(lv));
    }

    // Perron-Frobenius normalization: sum(R) = 1, R.L = 1.
    Eigen::VectorXcd r = ed.right[0][0], l = ed.left[0][0];
    cplx s = r.sum();
    r /= s;
    l *= s;
    ed.right[0][0] = r;
    ed.left[0][0] = l;
    ed.pf = ed.eigenvalues[0].real();
    ed.R = r.real();
    ed.L = l.real();
    return ed;
}

PerronFrobenius perron_frobenius(const IntMatrix& a) {
    auto ed = eigen_decompose(a);
    return {ed.pf, ed.R, ed.L};
}

CCoefficients c_coefficients(const EigenData& ed, const BratteliGraph& g) {
    if (!ed.diagonalizable)
        throw Error(ErrorCode::NotDiagonalizable, "C^j_H requires a diagonalizable matrix");
    CCoefficients cc;
    for (size_t j = 0; j < ed.eigenvalues.size(); ++j) {
        cplx s = 0;
        for (size_t l = 0; l < ed.right[j].size(); ++l) {
            cplx lsum = 0;
            for (const auto& h : g.horizontal) lsum += ed.left[j][l](g.pair_source(h));
            s += ed.right[j][l].sum() * lsum;
        }
        if (std::abs(ed.eigenvalues[j]) < 1e-12) {
            cc.zero_term += s;
            cc.c.push_back(0);
        } else {
            cc.c.push_back(s / ed.eigenvalues[j]);
        }
    }
    return cc;
}

cplx edge_count_from_coefficients(const EigenData& ed, const CCoefficients& cc, int n) {
    cplx s = n == 1 ? cc.zero_term : cplx(0);
    for (size_t j = 0; j < ed.eigenvalues.size(); ++j)
        if (cc.c[j] != cplx(0)) s += cc.c[j] * std::pow(ed.eigenvalues[j], n);
    return s;
}

} // namespace bspec
