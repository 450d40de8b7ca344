#include "bspec/forms.hpp"

#include <algorithm>
#include <cmath>

#include "bspec/kahan.hpp"

namespace bspec {

using cplx = std::complex<double>;

cplx qn_form(const BratteliGraph& g, const ObservableFn& f, const ObservableFn& h, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "q_n needs n >= 1");
    if (n > 22) throw Error(ErrorCode::DepthExceeded, "exact enumeration is capped at n = 22");
    int depth = std::max({n, observable_depth(f), observable_depth(h)});
    double scale = std::pow(g.rho, -n);
    Kahan<cplx> acc;
    double count = 0;
    for_each_horizontal(g, n, [&](const std::vector<int>& prefix, int hi) {
        auto s = prefix, r = prefix;
        s.push_back(g.horizontal[hi].from);
        r.push_back(g.horizontal[hi].to);
        s = tau_extend(g, PathWord{s, PathMode::Truncated}, depth).edges;
        r = tau_extend(g, PathWord{r, PathMode::Truncated}, depth).edges;
        cplx df = (evaluate(g, f, r) - evaluate(g, f, s)) * scale;
        cplx dh = &f == &h ? df : (evaluate(g, h, r) - evaluate(g, h, s)) * scale;
        acc.add(std::conj(df) * dh);
        count += 1;
    });
    return count > 0 ? acc.value() / count : cplx(0);
}

FormReport analyze_sequence(std::vector<cplx> values, double rel_tol) {
    FormReport rep;
    rep.values = std::move(values);
    size_t n = rep.values.size();
    if (n == 0) return rep;
    const auto& q = rep.values;
    rep.limit = q.back();
    if (n >= 3) {
        cplx d1 = q[n - 1] - q[n - 2], d2 = q[n - 1] - 2.0 * q[n - 2] + q[n - 3];
        if (std::abs(d2) > 1e-300 && std::abs(d1) > 0) {
            cplx aitken = q[n - 1] - d1 * d1 / d2;
            // Keep Aitken only when it stays within the last step of the plain tail.
            if (std::abs(aitken - q[n - 1]) <= std::abs(d1) * 10) rep.limit = aitken;
        }
    }
    double scale = std::max(1.0, std::abs(rep.limit));
    double worst = 0;
    for (size_t i = n >= 4 ? n - 3 : 1; i < n; ++i) {
        double d = std::abs(q[i] - q[i - 1]);
        rep.cauchy_diffs.push_back(d);
        worst = std::max(worst, d);
    }
    rep.converged = n >= 4 && worst <= rel_tol * scale;
    if (n >= 4) {
        bool grow = true;
        for (size_t i = n - 3; i < n; ++i)
            if (!(std::abs(q[i]) > 1.5 * std::abs(q[i - 1]))) grow = false;
        rep.diverging = grow;
        if (grow) rep.converged = false;
    }
    return rep;
}

FormReport q_limit(const BratteliGraph& g, const ObservableFn& f, const ObservableFn& h, int N,
                   double rel_tol) {
    if (N > 22) throw Error(ErrorCode::DepthExceeded, "q_limit is capped at N = 22");
    std::vector<cplx> v;
    for (int n = 1; n <= N; ++n) v.push_back(qn_form(g, f, h, n));
    return analyze_sequence(std::move(v), rel_tol);
}

double markov_clip(double t, double eps) {
    if (t < -2 * eps) return -eps;
    if (t < 0) return t + t * t / (4 * eps);
    if (t <= 1) return t;
    if (t <= 1 + 2 * eps) return t - (t - 1) * (t - 1) / (4 * eps);
    return 1 + eps;
}

bool markov_check(const BratteliGraph& g, const ObservableFn& f, int n, double eps) {
    SampledObs clipped;
    clipped.depth = std::max(n, observable_depth(f));
    clipped.fn = [&](const std::vector<int>& w) {
        return cplx(markov_clip(evaluate(g, f, w).real(), eps), 0.0);
    };
    ObservableFn cf = clipped;
    double qc = qn_form(g, cf, cf, n).real();
    double qf = qn_form(g, f, f, n).real();
    return qc <= qf * (1 + 1e-12) + 1e-15;
}

} // namespace bspec
