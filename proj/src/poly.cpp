#include "bspec/poly.hpp"

#include <algorithm>
#include <cmath>

namespace bspec {

IntPoly charpoly(const IntMatrix& a) {
    int n = a.dim();
    IntPoly c(n + 1);
    c[n] = 1;
    IntMatrix m(n);  // M_0 = 0
    for (int k = 1; k <= n; ++k) {
        IntMatrix am = a * m;
        for (int i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
        m = am;
        IntMatrix t = a * m;
        mpz_class tr = 0;
        for (int i = 0; i < n; ++i) tr += t(i, i);
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = -q;
    }
    return c;
}

RatPoly to_rat(const IntPoly& p) {
    RatPoly r(p.begin(), p.end());
    trim(r);
    return r;
}

IntPoly to_primitive_int(const RatPoly& p) {
    mpz_class den = 1;
    for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntPoly r;
    mpz_class g = 0;
    for (const auto& c : p) {
        mpq_class s = c * den;
        r.push_back(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    if (g == 0) return {};
    if (r.back() < 0) g = -g;
    for (auto& c : r) c /= g;
    return r;
}

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

std::pair<RatPoly, RatPoly> rp_divmod(const RatPoly& a, const RatPoly& b) {
    if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    RatPoly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    RatPoly q(r.size() - b.size() + 1);
    for (int i = degree(r) - degree(b); i >= 0; --i) {
        mpq_class f = r[i + b.size() - 1] / b.back();
        q[i] = f;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] -= f * b[j];
    }
    trim(q);
    trim(r);
    return {q, r};
}

RatPoly rp_monic(const RatPoly& a) {
    if (a.empty()) return a;
    RatPoly r = a;
    mpq_class lead = a.back();
    for (auto& c : r) c /= lead;
    return r;
}

RatPoly rp_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        RatPoly r = rp_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return rp_monic(x);
}

RatPoly rp_derivative(const RatPoly& a) {
    if (a.size() <= 1) return {};
    RatPoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<long>(i);
    trim(d);
    return d;
}

std::vector<std::pair<RatPoly, int>> squarefree(const RatPoly& p) {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly f = rp_monic(p);
    if (degree(f) < 1) return out;
    RatPoly fp = rp_derivative(f);
    RatPoly a = rp_gcd(f, fp);
    RatPoly b = rp_divmod(f, a).first;
    RatPoly c = rp_divmod(fp, a).first;
    RatPoly d = rp_sub(c, rp_derivative(b));
    int i = 1;
    while (degree(b) >= 1) {
        RatPoly g = rp_gcd(b, d);
        if (degree(g) >= 1) out.emplace_back(g, i);
        b = rp_divmod(b, g).first;
        c = rp_divmod(d, g).first;
        d = rp_sub(c, rp_derivative(b));
        ++i;
    }
    return out;
}

std::complex<long double> poly_eval(const RatPoly& p, std::complex<long double> z) {
    std::complex<long double> s = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + static_cast<long double>(it->get_d());
    return s;
}

namespace {

using cld = std::complex<long double>;

void eval_with_derivative(const std::vector<long double>& c, cld z, cld& f, cld& df) {
    f = 0;
    df = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        df = df * z + f;
        f = f * z + *it;
    }
}

} // namespace

std::vector<std::complex<double>> poly_roots(const RatPoly& p0) {
    RatPoly p = rp_monic(p0);
    int n = degree(p);
    if (n < 1) return {};
    std::vector<long double> c;
    for (const auto& x : p) c.push_back(static_cast<long double>(x.get_d()));
    if (n == 1) return {std::complex<double>(static_cast<double>(-c[0]), 0.0)};

    long double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[i]));
    bound += 1;
    std::vector<cld> z(n);
    for (int k = 0; k < n; ++k) {
        long double ang = 2.0L * M_PIl * k / n + 0.4L;
        z[k] = std::polar(0.5L * bound, ang);
    }
    for (int iter = 0; iter < 1000; ++iter) {
        long double maxstep = 0;
        for (int k = 0; k < n; ++k) {
            cld f, df;
            eval_with_derivative(c, z[k], f, df);
            if (std::abs(f) == 0) continue;
            cld ratio = f / df;
            cld sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0L / (z[k] - z[j]);
            cld step = ratio / (1.0L - ratio * sum);
            z[k] -= step;
            maxstep = std::max(maxstep, std::abs(step) / std::max(1.0L, std::abs(z[k])));
        }
        if (maxstep < 1e-19L) break;
    }
    for (auto& r : z)
        for (int it = 0; it < 3; ++it) {
            cld f, df;
            eval_with_derivative(c, r, f, df);
            if (std::abs(df) == 0) break;
            r -= f / df;
        }

    // Snap near-real roots to the axis and symmetrize conjugate pairs.
    std::vector<std::complex<double>> out;
    std::vector<bool> used(n, false);
    for (int k = 0; k < n; ++k) {
        if (used[k]) continue;
        used[k] = true;
        if (std::fabs(z[k].imag()) <= 1e-10L * std::max(1.0L, std::abs(z[k]))) {
            long double x = z[k].real();
            for (int it = 0; it < 3; ++it) {
                cld f, df;
                eval_with_derivative(c, cld(x, 0), f, df);
                if (df.real() == 0) break;
                x -= f.real() / df.real();
            }
            out.emplace_back(static_cast<double>(x), 0.0);
            continue;
        }
        int best = -1;
        long double bd = 0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            long double d = std::abs(z[j] - std::conj(z[k]));
            if (best < 0 || d < bd) {
                best = j;
                bd = d;
            }
        }
        cld avg = z[k];
        if (best >= 0) {
            used[best] = true;
            avg = 0.5L * (z[k] + std::conj(z[best]));
        }
        out.emplace_back(static_cast<double>(avg.real()), static_cast<double>(std::fabs(avg.imag())));
        out.emplace_back(static_cast<double>(avg.real()), -static_cast<double>(std::fabs(avg.imag())));
    }
    return out;
}

} // namespace bspec
