#include "bspec/tiling.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>

#include "bspec/eigen.hpp"

namespace bspec {

namespace {

// One nonzero vector of the kernel of m (n x n over Q(theta), corank >= 1).
std::vector<FieldElement> kernel_vector(std::vector<std::vector<FieldElement>> m,
                                        const FieldElement& zero) {
    int n = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < n && row < n; ++c) {
        int p = -1;
        for (int r = row; r < n; ++r)
            if (!m[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        FieldElement inv = m[row][c].inverse();
        for (int k = c; k < n; ++k) m[row][k] = m[row][k] * inv;
        for (int r = 0; r < n; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            FieldElement f = m[r][c];
            for (int k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    int free_col = -1;
    for (int c = 0; c < n; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
            free_col = c;
            break;
        }
    if (free_col < 0) throw Error(ErrorCode::InvalidArgument, "theta is not an eigenvalue");
    std::vector<FieldElement> x(n, zero);
    x[free_col] = FieldElement::from_rational(zero.field(), 1);
    for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][free_col];
    return x;
}

MinPoly theta_polynomial(const IntMatrix& a) {
    try {
        return minimal_polynomial_of_pf(a, 1);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::IrrationalityViolation) throw;
        double pf = perron_frobenius(a).pf;
        return MinPoly{{mpz_class(-std::lround(pf)), mpz_class(1)}};
    }
}

std::vector<HorizontalPair> explicit_pairs(const BratteliGraph& g,
                                           const std::vector<std::pair<std::string, std::string>>& ids,
                                           const char* what) {
    std::vector<HorizontalPair> h;
    auto has = [&](int a, int b) {
        return std::any_of(h.begin(), h.end(), [&](const auto& p) { return p.from == a && p.to == b; });
    };
    for (const auto& [x, y] : ids) {
        int a = g.edge_index(x), b = g.edge_index(y);
        if (a < 0 || b < 0 || a == b || g.edges[a].source != g.edges[b].source)
            throw Error(ErrorCode::HorizontalInvalid,
                        std::string(what) + " pair (" + x + ", " + y + ") is not a pair of distinct edges with a common " +
                            (std::string(what) == "H_tr" ? "source" : "range"));
        if (!has(a, b)) h.push_back({a, b, Orientation::Plus});
        if (!has(b, a)) h.push_back({b, a, Orientation::Minus});
    }
    return h;
}

double fe_value(const FieldElement& x) { return x.value(); }

} // namespace

Substitution1D build_substitution(const SubstitutionRules& rules) {
    int n = static_cast<int>(rules.alphabet.size());
    if (n == 0) throw Error(ErrorCode::Parse, "empty alphabet");
    if (static_cast<int>(rules.words.size()) != n)
        throw Error(ErrorCode::Parse, "one substitution word per letter is required");
    for (int v = 0; v < n; ++v) {
        if (rules.words[v].empty()) throw Error(ErrorCode::Parse, "empty word for " + rules.alphabet[v]);
        for (int u : rules.words[v])
            if (u < 0 || u >= n) throw Error(ErrorCode::Parse, "letter index out of range");
    }

    GraphSpec spec;
    spec.vertices = rules.alphabet;
    for (int v = 0; v < n; ++v)
        for (size_t k = 0; k < rules.words[v].size(); ++k)
            spec.edges.push_back({rules.alphabet[v] + ":" + std::to_string(k),
                                  rules.alphabet[rules.words[v][k]], rules.alphabet[v]});
    for (int v = 0; v < n && spec.star_edge.empty(); ++v)
        if (rules.words[v][0] == v) spec.star_edge = rules.alphabet[v] + ":0";
    for (int v = 0; v < n && spec.star_edge.empty(); ++v)
        for (size_t k = 0; k < rules.words[v].size() && spec.star_edge.empty(); ++k)
            if (rules.words[v][k] == v) spec.star_edge = rules.alphabet[v] + ":" + std::to_string(k);
    if (spec.star_edge.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "no letter occurs in its own substitute; use a power of the substitution");
    spec.tau_auto = true;
    spec.horizontal_maximal = true;
    spec.rho = 0.5;

    Substitution1D sub;
    sub.rules = rules;
    sub.graph = build_graph(spec);
    sub.matrix = graph_matrix(sub.graph);
    auto prim = is_primitive(sub.matrix);
    if (!prim.primitive) throw Error(ErrorCode::NonPrimitive, prim.certificate);

    sub.pisot = pisot_analyze(theta_polynomial(sub.matrix));
    sub.theta = sub.pisot.theta;
    sub.field = NumberField::make(sub.pisot);
    FieldElement zero = sub.zero();
    FieldElement th = FieldElement::theta(sub.field);

    std::vector<std::vector<FieldElement>> ml(n, std::vector<FieldElement>(n, zero)), mr = ml;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ml[i][j] = FieldElement::from_rational(sub.field, mpq_class(sub.matrix(j, i)));
            mr[i][j] = FieldElement::from_rational(sub.field, mpq_class(sub.matrix(i, j)));
        }
    for (int i = 0; i < n; ++i) {
        ml[i][i] = ml[i][i] - th;
        mr[i][i] = mr[i][i] - th;
    }
    sub.length = kernel_vector(ml, zero);
    sub.freq = kernel_vector(mr, zero);
    FieldElement total = zero;
    for (const auto& r : sub.freq) total = total + r;
    FieldElement inv_total = total.inverse();
    for (auto& r : sub.freq) r = r * inv_total;
    FieldElement rl = zero;
    for (int v = 0; v < n; ++v) rl = rl + sub.freq[v] * sub.length[v];
    FieldElement inv_rl = rl.inverse();
    for (auto& l : sub.length) l = l * inv_rl;
    for (int v = 0; v < n; ++v) {
        sub.length_d.push_back(fe_value(sub.length[v]));
        sub.freq_d.push_back(fe_value(sub.freq[v]));
    }

    sub.pos.assign(sub.graph.num_edges(), zero);
    for (int v = 0; v < n; ++v) {
        FieldElement acc = zero;
        for (size_t k = 0; k < rules.words[v].size(); ++k) {
            int e = sub.graph.edge_index(rules.alphabet[v] + ":" + std::to_string(k));
            sub.pos[e] = acc;
            acc = acc + sub.length[rules.words[v][k]];
        }
        if (!(acc == th * sub.length[v]))
            throw Error(ErrorCode::InvalidArgument, "tile lengths are not self-similar");
    }
    for (const auto& p : sub.pos) sub.pos_d.push_back(fe_value(p));
    return sub;
}

std::vector<std::pair<int, FieldElement>> supertile_offsets(const Substitution1D& sub, int letter,
                                                            int n) {
    if (letter < 0 || letter >= sub.num_letters())
        throw Error(ErrorCode::InvalidArgument, "letter out of range");
    if (n < 0 || n > 30) throw Error(ErrorCode::TooLarge, "supertile order must be in [0, 30]");
    IntMatrix p = sub.matrix.pow(n);
    BigInt count = 0;
    for (int u = 0; u < sub.num_letters(); ++u) count += p(u, letter);
    if (count > 1000000) throw Error(ErrorCode::TooLarge, "more than 10^6 tiles in the supertile");
    std::vector<int> word{letter};
    for (int i = 0; i < n; ++i) {
        std::vector<int> next;
        for (int u : word) next.insert(next.end(), sub.rules.words[u].begin(), sub.rules.words[u].end());
        word = std::move(next);
    }
    std::vector<std::pair<int, FieldElement>> out;
    out.reserve(word.size());
    FieldElement acc = sub.zero();
    for (int u : word) {
        out.emplace_back(u, acc);
        acc = acc + sub.length[u];
    }
    return out;
}

FieldElement path_offset(const Substitution1D& sub, const std::vector<int>& path) {
    FieldElement th = FieldElement::theta(sub.field);
    FieldElement acc = sub.zero();
    for (auto it = path.rbegin(); it != path.rend(); ++it) acc = acc * th + sub.pos[*it];
    return acc;
}

std::vector<ReturnVector> return_vectors(const Substitution1D& sub,
                                         const std::vector<HorizontalPair>& h_tr) {
    const auto& g = sub.graph;
    std::vector<ReturnVector> out;
    for (const auto& h : h_tr) {
        if (h.from == h.to) throw Error(ErrorCode::HorizontalInvalid, "pair of identical edges");
        std::vector<int> p1{h.from}, p2{h.to};
        int limit = 2 * g.num_edges() + 2;
        while (p1.back() != p2.back()) {
            if (static_cast<int>(p1.size()) > limit)
                throw Error(ErrorCode::NoMeeting, "tau paths of " + g.edges[h.from].id + " and " +
                                                      g.edges[h.to].id + " never coincide");
            p1.push_back(g.tau[p1.back()]);
            p2.push_back(g.tau[p2.back()]);
        }
        p1.pop_back();
        p2.pop_back();
        ReturnVector rv;
        rv.pair = h;
        rv.depth = static_cast<int>(p1.size());
        rv.r = path_offset(sub, p2) - path_offset(sub, p1);
        out.push_back(std::move(rv));
    }
    return out;
}

FieldElement microtile_point(const Substitution1D& sub, const BratteliGraph& rev, int e) {
    FieldElement inv = FieldElement::theta(sub.field).inverse();
    std::map<int, int> seen;
    std::vector<int> seq;
    while (!seen.count(e)) {
        seen[e] = static_cast<int>(seq.size());
        seq.push_back(e);
        e = rev.tau[e];
    }
    int i0 = seen[e];
    int period = static_cast<int>(seq.size()) - i0;
    FieldElement head = sub.zero(), cycle = sub.zero(), scale = inv;
    for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
        FieldElement term = scale * sub.pos[seq[i]];
        if (i < i0) head = head + term;
        else cycle = cycle + term;
        scale = scale * inv;
    }
    FieldElement one = FieldElement::from_rational(sub.field, 1);
    return head + cycle / (one - inv.pow(period));
}

std::vector<MicrotileVector> microtile_vectors(const Substitution1D& sub, const BratteliGraph& rev,
                                               const std::vector<HorizontalPair>& h_lg) {
    std::vector<MicrotileVector> out;
    for (const auto& h : h_lg)
        out.push_back({h, microtile_point(sub, rev, h.to) - microtile_point(sub, rev, h.from)});
    return out;
}

std::vector<HorizontalPair> transversal_pairs(const Substitution1D& sub) {
    if (sub.rules.h_tr.empty()) return maximal_horizontal(sub.graph);
    return explicit_pairs(sub.graph, sub.rules.h_tr, "H_tr");
}

std::vector<HorizontalPair> longitudinal_pairs(const Substitution1D& sub) {
    BratteliGraph rev = reverse(sub.graph);
    if (sub.rules.h_lg.empty()) return maximal_horizontal(rev);
    return explicit_pairs(rev, sub.rules.h_lg, "H_lg");
}

BratteliGraph reversed_graph(const Substitution1D& sub) {
    BratteliGraph rev = reverse(sub.graph);
    rev.tau = default_tau(rev);
    rev.horizontal = longitudinal_pairs(sub);
    return rev;
}

HorizontalGeometry horizontal_geometry(const Substitution1D& sub) {
    HorizontalGeometry geo;
    BratteliGraph rev = reversed_graph(sub);
    geo.tr = return_vectors(sub, transversal_pairs(sub));
    geo.lg = microtile_vectors(sub, rev, rev.horizontal);
    FieldElement zero = sub.zero();
    FieldElement str = zero, slg = zero;
    geo.K = zero;
    for (const auto& rv : geo.tr) {
        int v = sub.graph.edges[rv.pair.from].source;
        geo.tr_vertex.push_back(v);
        str = str + sub.length[v];
    }
    for (const auto& mv : geo.lg) {
        int v = sub.graph.edges[mv.pair.from].range;
        geo.lg_vertex.push_back(v);
        slg = slg + sub.freq[v];
        geo.K = geo.K + sub.freq[v] * mv.a * mv.a;
    }
    if (str.is_zero() || slg.is_zero())
        throw Error(ErrorCode::HorizontalInvalid, "H_tr and H_lg must both be non-empty");
    geo.c_tr = str.inverse();
    geo.c_lg = slg.inverse();
    return geo;
}

OmegaTriple omega_triple(const Substitution1D& sub, double rho_tr, double rho_lg) {
    for (double r : {rho_tr, rho_lg})
        if (!(r > 0 && r < 1)) throw Error(ErrorCode::RhoOutOfRange, "rho must lie in (0,1)");
    OmegaTriple o;
    o.transversal = sub.graph;
    o.transversal.rho = rho_tr;
    o.transversal.horizontal = transversal_pairs(sub);
    o.longitudinal = reversed_graph(sub);
    o.longitudinal.rho = rho_lg;
    if (!check_connectivity(o.transversal))
        throw Error(ErrorCode::DisconnectedH, "H_tr does not connect the edges of some vertex");
    if (!check_connectivity(o.longitudinal))
        throw Error(ErrorCode::DisconnectedH, "H_lg does not connect the edges of some vertex");
    o.rho_tr = rho_tr;
    o.rho_lg = rho_lg;
    double lt = std::log(sub.theta);
    o.s_tr = lt / -std::log(rho_tr);
    o.s_lg = lt / -std::log(rho_lg);
    o.s0 = o.s_tr + o.s_lg;
    return o;
}

OmegaHeatCheck omega_heat_check(const OmegaTriple& o, double t_min, double t_max, int points) {
    if (!(t_min > 0 && t_max > t_min) || points < 2)
        throw Error(ErrorCode::InvalidArgument, "need 0 < t_min < t_max and at least two points");
    OmegaHeatCheck res;
    double a = std::log(t_min), b = std::log(t_max);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, coef = 0;
    for (int i = 0; i < points; ++i) {
        double lt = a + (b - a) * i / (points - 1);
        double t = std::exp(lt);
        double z = tensor_heat_trace(o.transversal, o.longitudinal, t);
        res.t.push_back(t);
        res.trace.push_back(z);
        double ly = std::log(z);
        sx += lt;
        sy += ly;
        sxx += lt * lt;
        sxy += lt * ly;
        coef += std::exp(ly + o.s0 / 2 * lt);
    }
    double slope = (points * sxy - sx * sy) / (points * sxx - sx * sx);
    res.slope_s0 = -2 * slope;
    res.heat_coefficient = coef / points;
    res.positive = res.heat_coefficient > 0;
    return res;
}

DirichletParameters dirichlet_parameters(const Substitution1D& sub, long kmax) {
    const auto& pd = sub.pisot;
    if (pd.J < 2) {
        throw Error(ErrorCode::NotPisot, "theta = " + std::to_string(std::lround(pd.theta)) +
                                             " is rational");
    }
    if (!pd.pisot) throw Error(ErrorCode::NotPisot, "a conjugate of theta lies outside the unit disk");
    DirichletParameters dp;
    dp.rho_tr = std::abs(pd.conjugates[1]);
    dp.rho_lg = 1 / pd.theta;
    dp.min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pd.phases.size(); ++i)
        for (size_t j = 0; j < pd.phases.size(); ++j) {
            if (i == j) continue;
            auto c = nonresonant_phase_check(pd.phases[i] - pd.phases[j], dp.rho_tr, dp.rho_lg, kmax);
            dp.nonresonant = dp.nonresonant && !c.resonant;
            dp.min_gap = std::min(dp.min_gap, c.min_gap);
            dp.checks.push_back(c);
        }
    if (dp.checks.empty()) {
        dp.min_gap = 0;
        dp.verdict = "vacuous: a single subleading conjugate (L = 2)";
    } else {
        dp.verdict = dp.nonresonant ? "non-resonant up to " + std::to_string(kmax) : "resonant";
    }
    return dp;
}

double laplacian_eigenvalue(const Substitution1D& sub, const HorizontalGeometry& geo,
                            const FieldElement& b, Direction which) {
    const double four_pi2 = 4 * M_PI * M_PI;
    if (which == Direction::Longitudinal) {
        FieldElement s = sub.zero();
        for (size_t i = 0; i < geo.lg.size(); ++i) {
            FieldElement ba = b * geo.lg[i].a;
            s = s + sub.freq[geo.lg_vertex[i]] * ba * ba;
        }
        return -four_pi2 * (geo.c_lg * s).value();
    }
    const auto& pd = sub.pisot;
    if (pd.J < 2 || !pd.pisot) throw Error(ErrorCode::NotPisot, "the transversal Laplacian needs a Pisot field");
    double s = 0;
    for (size_t i = 0; i < geo.tr.size(); ++i) {
        FieldElement br = b * geo.tr[i].r;
        double inner = 0;
        for (int j = 1; j < pd.L; ++j) inner += std::norm(br.embed(j));
        s += sub.freq_d[geo.tr_vertex[i]] * inner;
    }
    return -four_pi2 * geo.c_tr.value() * s;
}

double q_tr_term(const Substitution1D& sub, const HorizontalGeometry& geo, const FieldElement& b,
                 int n, double rho) {
    const auto& pd = sub.pisot;
    FieldElement tn = FieldElement::theta(sub.field).pow(n);
    double s = 0;
    for (size_t i = 0; i < geo.tr.size(); ++i) {
        FieldElement x0 = b * geo.tr[i].r;
        mpq_class tr = (x0 * tn).trace();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), tr.get_num_mpz_t(), tr.get_den_mpz_t());
        mpq_class frac = tr - mpq_class(fl);
        // x theta^n = Tr(x theta^n) - sum_{j >= 2} sigma_j(x) theta_j^n
        std::complex<double> y = 0;
        for (int j = 1; j < pd.J; ++j) y += x0.embed(j) * std::pow(pd.conjugates[j], n);
        double phase = 2 * M_PI * (frac.get_d() - y.real());
        double sn = std::sin(phase / 2);
        s += sub.freq_d[geo.tr_vertex[i]] * 4 * sn * sn / std::pow(rho, 2 * n);
    }
    return geo.c_tr.value() * s;
}

QTrReport q_tr_numeric(const Substitution1D& sub, const HorizontalGeometry& geo,
                       const FieldElement& b, int n_lo, int n_hi, double rho) {
    if (sub.pisot.J < 2 || !sub.pisot.pisot)
        throw Error(ErrorCode::NotPisot, "the transversal form needs a Pisot field");
    double target = std::abs(sub.pisot.conjugates[1]);
    if (std::fabs(rho - target) > 1e-9)
        throw Error(ErrorCode::ParameterMismatch, "rho_tr must equal |theta_2| = " + std::to_string(target));
    if (n_lo < 0 || n_hi < n_lo) throw Error(ErrorCode::InvalidArgument, "empty window");
    QTrReport rep;
    double sum = 0;
    for (int n = n_lo; n <= n_hi; ++n) {
        rep.values.push_back(q_tr_term(sub, geo, b, n, rho));
        sum += rep.values.back();
    }
    rep.average = sum / rep.values.size();
    rep.expected = -laplacian_eigenvalue(sub, geo, b, Direction::Transversal);
    rep.rel_error = rep.expected == 0 ? std::fabs(rep.average)
                                      : std::fabs(rep.average - rep.expected) / rep.expected;
    return rep;
}

double q_lg_term(const Substitution1D& sub, const HorizontalGeometry& geo, const BratteliGraph& rev,
                 int v, const TileFunction& f, const TileFunction& g, int n, double rho) {
    if (v < 0 || v >= sub.num_letters()) throw Error(ErrorCode::InvalidArgument, "tile out of range");
    if (n < 0 || n > 40) throw Error(ErrorCode::DepthExceeded, "level must be in [0, 40]");
    std::vector<std::vector<size_t>> pairs_at(sub.num_letters());
    std::vector<double> p_from, p_to;
    for (size_t i = 0; i < geo.lg.size(); ++i) {
        pairs_at[geo.lg_vertex[i]].push_back(i);
        p_from.push_back(microtile_point(sub, rev, geo.lg[i].pair.from).value());
        p_to.push_back(microtile_point(sub, rev, geo.lg[i].pair.to).value());
    }
    auto out = rev.out_edges();
    double inv = 1 / sub.theta;
    double scale_n = std::pow(inv, n);
    double sum = 0;
    long count = 0;
    std::function<void(int, int, double, double)> walk = [&](int w, int depth, double base, double scale) {
        if (depth == n) {
            for (size_t i : pairs_at[w]) {
                double x = base + scale_n * p_from[i], xp = base + scale_n * p_to[i];
                sum += (f.f(xp) - f.f(x)) * (g.f(xp) - g.f(x));
                ++count;
            }
            return;
        }
        for (int e : out[w]) walk(rev.edges[e].range, depth + 1, base + scale * inv * sub.pos_d[e], scale * inv);
    };
    walk(v, 0, 0.0, 1.0);
    if (count == 0) return 0;
    return sum / count / std::pow(rho, 2 * n);
}

double lg_form(const Substitution1D& sub, const HorizontalGeometry& geo, int v,
               const TileFunction& f, const TileFunction& g) {
    double len = sub.length_d.at(v);
    auto integrand = [&](double x) { return f.df(x) * g.df(x); };
    double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, len, 15, 1e-13);
    return geo.c_lg.value() * geo.K.value() * integral / len;
}

QLgReport q_lg_numeric(const Substitution1D& sub, const HorizontalGeometry& geo, int v,
                       const TileFunction& f, const TileFunction& g, int n, double rho) {
    if (std::fabs(rho - 1 / sub.theta) > 1e-9)
        throw Error(ErrorCode::ParameterMismatch, "rho_lg must equal 1/theta = " + std::to_string(1 / sub.theta));
    QLgReport rep;
    BratteliGraph rev = reversed_graph(sub);
    rep.numeric = q_lg_term(sub, geo, rev, v, f, g, n, rho);
    rep.form = lg_form(sub, geo, v, f, g);
    double scale = std::max(std::fabs(rep.form), 1e-300);
    rep.rel_error = rep.form == 0 ? std::fabs(rep.numeric) : std::fabs(rep.numeric - rep.form) / scale;
    return rep;
}

std::vector<double> empirical_frequencies(const Substitution1D& sub, int letter, int n) {
    std::vector<int> word{letter};
    for (int i = 0; i < n; ++i) {
        std::vector<int> next;
        for (int u : word) next.insert(next.end(), sub.rules.words[u].begin(), sub.rules.words[u].end());
        if (next.size() > 10000000) throw Error(ErrorCode::TooLarge, "word exceeds 10^7 letters");
        word = std::move(next);
    }
    std::vector<double> f(sub.num_letters(), 0);
    for (int u : word) f[u] += 1;
    for (auto& x : f) x /= static_cast<double>(word.size());
    return f;
}

} // namespace bspec
