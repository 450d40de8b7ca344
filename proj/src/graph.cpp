#include "bspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>

namespace bspec {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::TauInvalid: return "TauInvalid";
    case ErrorCode::HorizontalInvalid: return "HorizontalInvalid";
    case ErrorCode::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::DivergesAt: return "DivergesAt";
    case ErrorCode::DisconnectedH: return "DisconnectedH";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::WrongGraph: return "WrongGraph";
    case ErrorCode::IrrationalityViolation: return "IrrationalityViolation";
    case ErrorCode::NotPisot: return "NotPisot";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoMeeting: return "NoMeeting";
    case ErrorCode::ParameterMismatch: return "ParameterMismatch";
    case ErrorCode::BothResiduesZero: return "BothResiduesZero";
    case ErrorCode::InsufficientDecay: return "InsufficientDecay";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix c(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const BigInt& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < n_; ++j) c(i, j) += a * o(k, j);
        }
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::pow(long e) const {
    IntMatrix result = identity(n_), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool IntMatrix::all_positive() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x > 0; });
}

std::vector<std::vector<double>> IntMatrix::to_double() const {
    std::vector<std::vector<double>> d(n_, std::vector<double>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) d[i][j] = (*this)(i, j).get_d();
    return d;
}

int BratteliGraph::edge_index(const std::string& id) const {
    for (int i = 0; i < num_edges(); ++i)
        if (edges[i].id == id) return i;
    return -1;
}

int BratteliGraph::vertex_index(const std::string& id) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertices[i] == id) return i;
    return -1;
}

std::vector<std::vector<int>> BratteliGraph::out_edges() const {
    std::vector<std::vector<int>> out(vertices.size());
    for (int e = 0; e < num_edges(); ++e) out[edges[e].source].push_back(e);
    return out;
}

std::vector<int> BratteliGraph::distance_to_star() const {
    std::vector<int> dist(vertices.size(), -1);
    if (edges.empty()) return dist;
    std::vector<std::vector<int>> in(vertices.size());
    for (const auto& e : edges) in[e.range].push_back(e.source);
    std::deque<int> q{star_vertex()};
    dist[star_vertex()] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : in[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
    }
    return dist;
}

std::vector<int> default_tau(const BratteliGraph& g) {
    auto dist = g.distance_to_star();
    auto out = g.out_edges();
    std::vector<int> tau(g.num_edges(), g.star_edge);
    for (int e = 0; e < g.num_edges(); ++e) {
        int v = g.edges[e].range;
        if (v == g.star_vertex() || dist[v] < 0) continue;
        for (int f : out[v])
            if (dist[g.edges[f].range] >= 0 && dist[g.edges[f].range] < dist[v]) {
                tau[e] = f;
                break;
            }
    }
    return tau;
}

std::vector<HorizontalPair> maximal_horizontal(const BratteliGraph& g) {
    std::vector<HorizontalPair> h;
    for (int a = 0; a < g.num_edges(); ++a)
        for (int b = 0; b < g.num_edges(); ++b)
            if (a != b && g.edges[a].source == g.edges[b].source)
                h.push_back({a, b, a < b ? Orientation::Plus : Orientation::Minus});
    return h;
}

std::vector<std::pair<ErrorCode, std::string>> validate_graph(const BratteliGraph& g) {
    std::vector<std::pair<ErrorCode, std::string>> bad;
    if (!(g.rho > 0.0 && g.rho < 1.0)) {
        std::ostringstream os;
        os << "rho = " << g.rho << " is not in (0,1)";
        bad.emplace_back(ErrorCode::RhoOutOfRange, os.str());
    }
    if (g.num_edges() == 0 || g.star_edge < 0 || g.star_edge >= g.num_edges()) {
        bad.emplace_back(ErrorCode::Parse, "star_edge does not name an edge");
        return bad;
    }
    const auto& star = g.edges[g.star_edge];
    if (star.source != star.range)
        bad.emplace_back(ErrorCode::TauInvalid, "star_edge " + star.id + " is not a loop");

    if (static_cast<int>(g.tau.size()) != g.num_edges()) {
        bad.emplace_back(ErrorCode::TauInvalid, "tau is not defined on every edge");
    } else {
        auto dist = g.distance_to_star();
        for (int e = 0; e < g.num_edges(); ++e) {
            int t = g.tau[e];
            const auto& id = g.edges[e].id;
            if (t < 0 || t >= g.num_edges()) {
                bad.emplace_back(ErrorCode::TauInvalid, "tau(" + id + ") is not an edge");
                continue;
            }
            int v = g.edges[e].range;
            if (v == star.source) {
                if (t != g.star_edge)
                    bad.emplace_back(ErrorCode::TauInvalid,
                                     "tau(" + id + ") must be the star edge");
            } else if (g.edges[t].source != v) {
                bad.emplace_back(ErrorCode::TauInvalid,
                                 "tau(" + id + ") = " + g.edges[t].id + " does not start at range");
            } else {
                int dv = dist[v], dw = dist[g.edges[t].range];
                if (dv < 0 || dw < 0 || dw >= dv)
                    bad.emplace_back(ErrorCode::TauInvalid,
                                     "tau(" + id + ") does not move closer to the star vertex");
            }
        }
    }

    std::map<std::pair<int, int>, Orientation> seen;
    for (const auto& h : g.horizontal) {
        if (h.from < 0 || h.to < 0 || h.from >= g.num_edges() || h.to >= g.num_edges()) {
            bad.emplace_back(ErrorCode::HorizontalInvalid, "horizontal pair names unknown edge");
            continue;
        }
        std::string tag = "(" + g.edges[h.from].id + "," + g.edges[h.to].id + ")";
        if (h.from == h.to) bad.emplace_back(ErrorCode::HorizontalInvalid, "loop pair " + tag);
        if (g.edges[h.from].source != g.edges[h.to].source)
            bad.emplace_back(ErrorCode::HorizontalInvalid, "pair " + tag + " has distinct sources");
        if (!seen.emplace(std::make_pair(h.from, h.to), h.orientation).second)
            bad.emplace_back(ErrorCode::HorizontalInvalid, "duplicate pair " + tag);
    }
    for (const auto& [k, o] : seen) {
        auto it = seen.find({k.second, k.first});
        if (it == seen.end())
            bad.emplace_back(ErrorCode::HorizontalInvalid,
                             "pair (" + g.edges[k.first].id + "," + g.edges[k.second].id +
                                 ") has no reverse");
        else if (it->second == o)
            bad.emplace_back(ErrorCode::HorizontalInvalid,
                             "pair (" + g.edges[k.first].id + "," + g.edges[k.second].id +
                                 ") and its reverse share an orientation");
    }

    auto prim = is_primitive(graph_matrix(g));
    if (!prim.primitive) bad.emplace_back(ErrorCode::NonPrimitive, prim.certificate);
    return bad;
}

BratteliGraph build_graph(const GraphSpec& spec) {
    BratteliGraph g;
    g.vertices = spec.vertices;
    g.rho = spec.rho;
    std::vector<std::string> unknown;
    for (const auto& e : spec.edges) {
        Edge ed{e.id, g.vertex_index(e.source), g.vertex_index(e.range)};
        if (ed.source < 0 || ed.range < 0) unknown.push_back("edge " + e.id + " uses unknown vertex");
        if (g.edge_index(e.id) >= 0) unknown.push_back("duplicate edge id " + e.id);
        g.edges.push_back(ed);
    }
    g.star_edge = g.edge_index(spec.star_edge);
    if (g.star_edge < 0) unknown.push_back("unknown star_edge " + spec.star_edge);
    if (!unknown.empty()) throw Error(ErrorCode::Parse, unknown);

    if (spec.tau_auto) {
        g.tau = default_tau(g);
    } else {
        g.tau.assign(g.num_edges(), -1);
        for (const auto& [from, to] : spec.tau) {
            int a = g.edge_index(from), b = g.edge_index(to);
            if (a < 0 || b < 0) unknown.push_back("tau entry " + from + " -> " + to + " unknown");
            else g.tau[a] = b;
        }
        for (int e = 0; e < g.num_edges(); ++e)
            if (g.tau[e] < 0) unknown.push_back("tau undefined on " + g.edges[e].id);
    }
    if (spec.horizontal_maximal) {
        g.horizontal = maximal_horizontal(g);
    } else {
        for (const auto& h : spec.horizontal) {
            int a = g.edge_index(h.from), b = g.edge_index(h.to);
            if (a < 0 || b < 0) {
                unknown.push_back("horizontal pair " + h.from + "," + h.to + " unknown");
                continue;
            }
            if (h.orientation != "+" && h.orientation != "-")
                unknown.push_back("orientation must be + or -");
            g.horizontal.push_back(
                {a, b, h.orientation == "-" ? Orientation::Minus : Orientation::Plus});
        }
    }
    if (!unknown.empty()) throw Error(ErrorCode::Parse, unknown);

    auto bad = validate_graph(g);
    if (!bad.empty()) {
        std::vector<std::string> msgs;
        for (const auto& b : bad) msgs.push_back(std::string(error_name(b.first)) + ": " + b.second);
        throw Error(bad.front().first, msgs);
    }
    return g;
}

IntMatrix graph_matrix(const BratteliGraph& g) {
    IntMatrix a(g.num_vertices());
    for (const auto& e : g.edges) a(e.source, e.range) += 1;
    return a;
}

namespace {

using BoolRows = std::vector<std::vector<uint64_t>>;

BoolRows bool_mul(const BoolRows& x, const BoolRows& y, int n) {
    BoolRows z(n, std::vector<uint64_t>(x[0].size(), 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (x[i][k >> 6] >> (k & 63) & 1)
                for (size_t w = 0; w < z[i].size(); ++w) z[i][w] |= y[k][w];
    return z;
}

bool bool_full(const BoolRows& x, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(x[i][j >> 6] >> (j & 63) & 1)) return false;
    return true;
}

} // namespace

PrimitivityResult is_primitive(const IntMatrix& a) {
    PrimitivityResult res;
    int n = a.dim();
    if (n == 0) {
        res.certificate = "empty matrix";
        return res;
    }
    size_t words = (n + 63) / 64;
    BoolRows base(n, std::vector<uint64_t>(words, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) > 0) base[i][j >> 6] |= uint64_t(1) << (j & 63);
    long bound = static_cast<long>(n - 1) * n + 1;
    BoolRows p = base;
    for (long k = 1; k <= bound; ++k) {
        if (bool_full(p, n)) {
            res.primitive = true;
            res.witness = static_cast<int>(k);
            return res;
        }
        BoolRows next = bool_mul(p, base, n);
        if (next == p) break;
        p = std::move(next);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(p[i][j >> 6] >> (j & 63) & 1)) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") of A^k stays zero up to k = " << bound;
                res.certificate = os.str();
                return res;
            }
    res.certificate = "powers never become positive";
    return res;
}

IntMatrix path_count(const IntMatrix& a, long n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative path length");
    return a.pow(n);
}

bool is_valid_path(const BratteliGraph& g, const std::vector<int>& edges) {
    for (size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] < 0 || edges[i] >= g.num_edges()) return false;
        if (i > 0 && g.edges[edges[i - 1]].range != g.edges[edges[i]].source) return false;
    }
    return true;
}

PathWord tau_extend(const BratteliGraph& g, const PathWord& w, int depth) {
    if (w.edges.empty()) throw Error(ErrorCode::InvalidArgument, "cannot extend an empty word");
    if (!is_valid_path(g, w.edges)) throw Error(ErrorCode::InvalidArgument, "word is not a path");
    PathWord out{w.edges, PathMode::TauExtended};
    while (static_cast<int>(out.edges.size()) < depth) out.edges.push_back(g.tau[out.edges.back()]);
    return out;
}

BigInt horizontal_count(const BratteliGraph& g, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "horizontal_count needs n >= 1");
    IntMatrix p = graph_matrix(g).pow(n - 1);
    BigInt total = 0;
    for (const auto& h : g.horizontal)
        for (int v = 0; v < g.num_vertices(); ++v) total += p(v, g.pair_source(h));
    return total;
}

namespace {

void extend_paths(const BratteliGraph& g, const std::vector<std::vector<int>>& out,
                  std::vector<int>& cur, int n,
                  const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(cur.size()) == n) {
        fn(cur);
        return;
    }
    int v = g.edges[cur.back()].range;
    for (int e : out[v]) {
        cur.push_back(e);
        extend_paths(g, out, cur, n, fn);
        cur.pop_back();
    }
}

void visit_paths(const BratteliGraph& g, int n, int start_vertex,
                 const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    if (n == 0) {
        fn(cur);
        return;
    }
    auto out = g.out_edges();
    for (int e = 0; e < g.num_edges(); ++e) {
        if (start_vertex >= 0 && g.edges[e].source != start_vertex) continue;
        cur.assign(1, e);
        extend_paths(g, out, cur, n, fn);
    }
}

} // namespace

void for_each_horizontal(const BratteliGraph& g, int n,
                         const std::function<void(const std::vector<int>&, int)>& fn) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "E_n needs n >= 1");
    std::vector<std::vector<int>> by_source(g.num_vertices());
    for (int i = 0; i < static_cast<int>(g.horizontal.size()); ++i)
        by_source[g.pair_source(g.horizontal[i])].push_back(i);
    if (n == 1) {
        std::vector<int> empty;
        // Each vertex contributes a trivial path; only the pair's source matches it.
        for (int v = 0; v < g.num_vertices(); ++v)
            for (int i : by_source[v]) fn(empty, i);
        return;
    }
    visit_paths(g, n - 1, -1, [&](const std::vector<int>& p) {
        for (int i : by_source[g.edges[p.back()].range]) fn(p, i);
    });
}

std::vector<std::vector<int>> all_paths(const BratteliGraph& g, int n) {
    std::vector<std::vector<int>> res;
    visit_paths(g, n, -1, [&](const std::vector<int>& p) { res.push_back(p); });
    return res;
}

std::vector<std::vector<int>> paths_from(const BratteliGraph& g, int v, int n) {
    std::vector<std::vector<int>> res;
    visit_paths(g, n, v, [&](const std::vector<int>& p) { res.push_back(p); });
    return res;
}

BratteliGraph telescope(const BratteliGraph& g, int p) {
    if (p < 1) throw Error(ErrorCode::InvalidArgument, "telescope needs p >= 1");
    BratteliGraph t;
    t.vertices = g.vertices;
    t.rho = std::pow(g.rho, p);
    auto blocks = all_paths(g, p);
    std::map<std::vector<int>, int> index;
    for (const auto& b : blocks) {
        std::string id;
        for (size_t i = 0; i < b.size(); ++i) id += (i ? "." : "") + g.edges[b[i]].id;
        index[b] = t.num_edges();
        t.edges.push_back({id, g.edges[b.front()].source, g.edges[b.back()].range});
    }
    auto continue_tau = [&](std::vector<int> w, int len) {
        while (static_cast<int>(w.size()) < len) w.push_back(g.tau[w.back()]);
        return w;
    };
    t.star_edge = index.at(std::vector<int>(p, g.star_edge));
    t.tau.resize(t.num_edges());
    for (const auto& [b, i] : index) {
        auto next = continue_tau(b, 2 * p);
        t.tau[i] = index.at(std::vector<int>(next.begin() + p, next.end()));
    }
    // Blocks agree before position i, differ by an H pair at i, then follow tau.
    for (int i = 1; i <= p; ++i) {
        for (const auto& h : g.horizontal) {
            int src = g.pair_source(h);
            auto emit = [&](const std::vector<int>& prefix) {
                auto a = prefix, b = prefix;
                a.push_back(h.from);
                b.push_back(h.to);
                t.horizontal.push_back(
                    {index.at(continue_tau(a, p)), index.at(continue_tau(b, p)), h.orientation});
            };
            if (i == 1) {
                emit({});
                continue;
            }
            for (const auto& pre : all_paths(g, i - 1))
                if (g.edges[pre.back()].range == src) emit(pre);
        }
    }
    return t;
}

BratteliGraph reverse(const BratteliGraph& g) {
    BratteliGraph r;
    r.vertices = g.vertices;
    r.rho = g.rho;
    r.star_edge = g.star_edge;
    for (const auto& e : g.edges) r.edges.push_back({e.id, e.range, e.source});
    return r;
}

HDistance::HDistance(const BratteliGraph& g) : n_(g.num_edges()) {
    d_.assign(static_cast<size_t>(n_) * n_, -1);
    std::vector<std::vector<int>> adj(n_);
    for (const auto& h : g.horizontal) adj[h.from].push_back(h.to);
    for (int s = 0; s < n_; ++s) {
        auto* row = &d_[static_cast<size_t>(s) * n_];
        row[s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int w : adj[u])
                if (row[w] < 0) {
                    row[w] = row[u] + 1;
                    q.push_back(w);
                }
        }
    }
}

int HDistance::max_finite() const {
    int m = 0;
    for (int x : d_) m = std::max(m, x);
    return m;
}

bool check_connectivity(const BratteliGraph& g) {
    HDistance d(g);
    for (int a = 0; a < g.num_edges(); ++a)
        for (int b = 0; b < g.num_edges(); ++b)
            if (a != b && g.edges[a].source == g.edges[b].source && d(a, b) < 0) return false;
    return true;
}

} // namespace bspec
