#include "bspec/numberfield.hpp"

#include <algorithm>
#include <cmath>

namespace bspec {

namespace {

using cld = std::complex<long double>;

bool before(const std::complex<double>& a, const std::complex<double>& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (std::fabs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb))) return ma > mb;
    return std::arg(a) < std::arg(b);
}

// Monic integer polynomial with the given roots, if its coefficients round cleanly.
bool integer_poly_from_roots(const std::vector<std::complex<double>>& roots, IntPoly& out) {
    std::vector<cld> c{cld(1)};
    for (const auto& r : roots) {
        std::vector<cld> n(c.size() + 1, cld(0));
        for (size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= c[i] * cld(r.real(), r.imag());
        }
        c = std::move(n);
    }
    out.clear();
    for (const auto& x : c) {
        long double re = std::round(x.real());
        if (std::fabs(x.imag()) > 1e-6L || std::fabs(x.real() - re) > 1e-6L * std::max(1.0L, std::fabs(re)))
            return false;
        out.emplace_back(static_cast<long>(re));
    }
    return true;
}

} // namespace

MinPoly minimal_polynomial_of_pf(const IntMatrix& a, int d) {
    if (a.dim() > 8) throw Error(ErrorCode::TooLarge, "minimal polynomial search capped at dimension 8");
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be positive");
    IntPoly cp = charpoly(a);
    IntPoly p(static_cast<size_t>(cp.size() - 1) * d + 1, 0);
    for (size_t i = 0; i < cp.size(); ++i) p[i * d] = cp[i];
    RatPoly rp = to_rat(p);
    RatPoly radical = rp_divmod(rp, rp_gcd(rp, rp_derivative(rp))).first;
    radical = rp_monic(radical);
    auto roots = poly_roots(radical);

    double pf = 0;
    for (const auto& r : poly_roots(rp_divmod(to_rat(cp), rp_gcd(to_rat(cp), rp_derivative(to_rat(cp)))).first))
        if (std::fabs(r.imag()) == 0) pf = std::max(pf, r.real());
    double target = std::pow(pf, 1.0 / d);
    size_t ti = 0;
    for (size_t i = 1; i < roots.size(); ++i)
        if (std::abs(roots[i] - target) < std::abs(roots[ti] - target)) ti = i;

    std::vector<size_t> others;
    for (size_t i = 0; i < roots.size(); ++i)
        if (i != ti) others.push_back(i);
    if (others.size() > 20) throw Error(ErrorCode::TooLarge, "too many candidate conjugates");
    size_t m = others.size();
    for (size_t sz = 0; sz <= m; ++sz) {
        for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
            if (static_cast<size_t>(__builtin_popcountl(mask)) != sz) continue;
            std::vector<std::complex<double>> sel{roots[ti]};
            for (size_t k = 0; k < m; ++k)
                if (mask >> k & 1) sel.push_back(roots[others[k]]);
            IntPoly cand;
            if (!integer_poly_from_roots(sel, cand)) continue;
            if (!rp_divmod(radical, to_rat(cand)).second.empty()) continue;
            if (cand.size() == 2)
                throw Error(ErrorCode::IrrationalityViolation,
                            "theta = " + mpz_class(-cand[0]).get_str() + " is rational");
            return MinPoly{cand};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "no integer factor found for theta");
}

PisotData pisot_analyze(const MinPoly& mp, double tie_tol) {
    PisotData pd;
    pd.mp = mp;
    pd.J = mp.degree();
    auto roots = poly_roots(to_rat(mp.coeffs));
    size_t ti = 0;
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i].imag() == 0 && (roots[ti].imag() != 0 || roots[i].real() > roots[ti].real()))
            ti = i;
    pd.theta = roots[ti].real();
    std::vector<std::complex<double>> rest;
    for (size_t i = 0; i < roots.size(); ++i)
        if (i != ti) rest.push_back(roots[i]);
    std::sort(rest.begin(), rest.end(), before);
    pd.conjugates.push_back(roots[ti]);
    pd.conjugates.insert(pd.conjugates.end(), rest.begin(), rest.end());
    pd.L = 1;
    if (!rest.empty()) {
        double m2 = std::abs(rest[0]);
        for (const auto& r : rest)
            if (std::fabs(std::abs(r) - m2) <= tie_tol * std::max(1.0, m2)) {
                ++pd.L;
                pd.phases.push_back(std::arg(r));
            }
    }
    pd.pisot = pd.theta > 1 &&
               std::all_of(rest.begin(), rest.end(), [](const auto& r) { return std::abs(r) < 1; });
    pd.unimodular = abs(mp.coeffs[0]) == 1;
    return pd;
}

std::shared_ptr<const NumberField> NumberField::make(const PisotData& pd) {
    auto f = std::make_shared<NumberField>();
    f->mp = pd.mp;
    f->conjugates = pd.conjugates;
    int J = pd.mp.degree();
    const auto& c = pd.mp.coeffs;
    std::vector<mpz_class> p(J + 1);
    p[0] = J;
    // Newton's identities for the power sums of the roots.
    for (int k = 1; k <= J; ++k) {
        mpz_class s = -k * c[J - k];
        for (int i = 1; i < k; ++i) s -= c[J - i] * p[k - i];
        p[k] = s;
    }
    p.resize(J);
    f->power_traces = p;
    return f;
}

FieldElement::FieldElement(std::shared_ptr<const NumberField> f, std::vector<mpq_class> q)
    : f_(std::move(f)), q_(std::move(q)) {
    reduce();
}

FieldElement FieldElement::from_rational(std::shared_ptr<const NumberField> f, const mpq_class& c) {
    return FieldElement(std::move(f), {c});
}

FieldElement FieldElement::theta(std::shared_ptr<const NumberField> f) {
    return FieldElement(std::move(f), {0, 1});
}

void FieldElement::reduce() {
    int J = f_->degree();
    const auto& m = f_->mp.coeffs;
    for (int i = static_cast<int>(q_.size()) - 1; i >= J; --i) {
        mpq_class lead = q_[i];
        if (lead != 0)
            for (int k = 0; k < J; ++k) q_[i - J + k] -= lead * m[k];
        q_[i] = 0;
    }
    q_.resize(J, 0);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    std::vector<mpq_class> r = q_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.q_[i];
    return FieldElement(f_, r);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    std::vector<mpq_class> r = q_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.q_[i];
    return FieldElement(f_, r);
}

FieldElement FieldElement::operator-() const {
    std::vector<mpq_class> r = q_;
    for (auto& x : r) x = -x;
    return FieldElement(f_, r);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    std::vector<mpq_class> r(q_.size() + o.q_.size(), 0);
    for (size_t i = 0; i < q_.size(); ++i)
        if (q_[i] != 0)
            for (size_t j = 0; j < o.q_.size(); ++j) r[i + j] += q_[i] * o.q_[j];
    return FieldElement(f_, r);
}

FieldElement FieldElement::operator*(const mpq_class& c) const {
    std::vector<mpq_class> r = q_;
    for (auto& x : r) x *= c;
    return FieldElement(f_, r);
}

bool FieldElement::is_zero() const {
    return std::all_of(q_.begin(), q_.end(), [](const mpq_class& x) { return x == 0; });
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    // Extended Euclid: track u with u * a = r (mod m).
    RatPoly r0 = to_rat(f_->mp.coeffs), r1 = q_;
    trim(r1);
    RatPoly u0, u1{1};
    while (degree(r1) > 0) {
        auto [qt, rem] = rp_divmod(r0, r1);
        RatPoly u2 = rp_sub(u0, rp_mul(qt, u1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r1 is a nonzero constant since m is irreducible.
    for (auto& x : u1) x /= r1[0];
    return FieldElement(f_, u1);
}

FieldElement FieldElement::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FieldElement result = from_rational(f_, 1), base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

std::complex<double> FieldElement::embed(int j) const {
    cld z(f_->conjugates[j].real(), f_->conjugates[j].imag());
    cld s = 0;
    for (auto it = q_.rbegin(); it != q_.rend(); ++it) s = s * z + static_cast<long double>(it->get_d());
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

mpq_class FieldElement::trace() const {
    mpq_class t = 0;
    for (size_t i = 0; i < q_.size(); ++i) t += q_[i] * f_->power_traces[i];
    return t;
}

StarValues star_values(const FieldElement& p, const PisotData& pd) {
    if (!pd.pisot) throw Error(ErrorCode::NotPisot, "star values need a Pisot field");
    StarValues sv;
    for (int j = 1; j < pd.J; ++j) {
        auto v = p.embed(j);
        sv.full += v;
        if (j < pd.L) sv.reduced += v;
    }
    return sv;
}

} // namespace bspec
