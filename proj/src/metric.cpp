#include "bspec/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>

namespace bspec {

namespace {

std::vector<int> to_depth(const BratteliGraph& g, const PathWord& w, int N) {
    auto e = tau_extend(g, w, N).edges;
    e.resize(N);
    return e;
}

} // namespace

DistanceResult connes_distance(const BratteliGraph& g, const HDistance& hd, const PathWord& x,
                               const PathWord& y, int N) {
    auto a = to_depth(g, x, N), b = to_depth(g, y, N);
    DistanceResult res;
    int cmax = std::max(1, hd.max_finite());
    res.tail_bound = 2 * cmax * std::pow(g.rho, N + 1) / (1 - g.rho);
    int n = 0;
    while (n < N && a[n] == b[n]) ++n;
    if (n == N) return res;
    res.n_xy = n + 1;
    if (g.edges[a[n]].source != g.edges[b[n]].source)
        throw Error(ErrorCode::DisconnectedH, "words start at different vertices");
    res.c_xy = hd(a[n], b[n]);
    if (res.c_xy < 0)
        throw Error(ErrorCode::DisconnectedH,
                    "no H-path between " + g.edges[a[n]].id + " and " + g.edges[b[n]].id);
    double v = res.c_xy * std::pow(g.rho, res.n_xy);
    for (int m = n + 1; m < N; ++m) {
        int dx = hd(g.tau[a[m - 1]], a[m]);
        int dy = hd(g.tau[b[m - 1]], b[m]);
        if (dx < 0 || dy < 0) throw Error(ErrorCode::DisconnectedH, "H is not connected");
        v += (dx + dy) * std::pow(g.rho, m + 1);
    }
    res.value = v;
    return res;
}

DistanceResult connes_distance(const BratteliGraph& g, const PathWord& x, const PathWord& y,
                               int N) {
    return connes_distance(g, HDistance(g), x, y, N);
}

double geodesic_oracle(const BratteliGraph& g, const PathWord& x, const PathWord& y, int N) {
    if (N > 14) throw Error(ErrorCode::DepthExceeded, "oracle depth is capped at 14");
    auto src = to_depth(g, x, N), dst = to_depth(g, y, N);
    if (src == dst) return 0;
    std::vector<std::vector<int>> pairs_from(g.num_edges());
    for (const auto& h : g.horizontal) pairs_from[h.from].push_back(h.to);

    // Words are byte strings (short enough for the small-string buffer); nodes are
    // stored once and referred to by id.
    if (g.num_edges() > 255) throw Error(ErrorCode::TooLarge, "oracle supports at most 255 edges");
    auto pack = [](const std::vector<int>& w) { return std::string(w.begin(), w.end()); };
    std::vector<std::string> words;
    std::vector<double> dist, dist_back;
    std::unordered_map<std::string, int> index;
    auto node = [&](const std::string& w) {
        auto [it, fresh] = index.try_emplace(w, static_cast<int>(words.size()));
        if (fresh) {
            words.push_back(w);
            dist.push_back(std::numeric_limits<double>::infinity());
            dist_back.push_back(std::numeric_limits<double>::infinity());
        }
        return it->second;
    };
    auto edge = [](char c) { return static_cast<int>(static_cast<unsigned char>(c)); };
    std::string nb;
    nb.reserve(N);
    std::vector<double> step(N + 1);
    for (int n = 1; n <= N; ++n) step[n] = std::pow(g.rho, n);
    auto neighbours = [&](int u, auto&& fn) {
        // Level n (1-based) edges apply when w[n..] is the tau-continuation of w[n-1].
        int tail = N - 1;
        while (tail > 0 && edge(words[u][tail]) == g.tau[edge(words[u][tail - 1])]) --tail;
        for (int n = tail + 1; n <= N; ++n) {
            for (int to : pairs_from[edge(words[u][n - 1])]) {
                nb.assign(words[u], 0, n - 1);
                nb.push_back(static_cast<char>(to));
                while (static_cast<int>(nb.size()) < N) nb.push_back(static_cast<char>(g.tau[edge(nb.back())]));
                fn(node(nb), step[n]);
            }
        }
    };
    // Moves are symmetric (H holds both orientations), so search from both ends.
    int s = node(pack(src)), t = node(pack(dst));
    using Item = std::pair<double, int>;
    using Queue = std::priority_queue<Item, std::vector<Item>, std::greater<>>;
    Queue pq[2];
    dist[s] = 0;
    dist_back[t] = 0;
    pq[0].push({0, s});
    pq[1].push({0, t});
    double best = std::numeric_limits<double>::infinity();
    while (!pq[0].empty() && !pq[1].empty()) {
        if (pq[0].top().first + pq[1].top().first >= best) return best;
        int side = pq[0].size() <= pq[1].size() ? 0 : 1;
        auto [d, u] = pq[side].top();
        pq[side].pop();
        auto& mine = side == 0 ? dist : dist_back;
        if (d > mine[u]) continue;
        neighbours(u, [&](int v, double w) {
            auto& here = side == 0 ? dist : dist_back;
            auto& other = side == 0 ? dist_back : dist;
            double nd = d + w;
            if (nd < here[v]) {
                here[v] = nd;
                pq[side].push({nd, v});
            }
            best = std::min(best, here[v] + other[v]);
        });
    }
    if (best < std::numeric_limits<double>::infinity()) return best;
    throw Error(ErrorCode::Unreachable, "target not reachable within depth");
}

std::vector<int> random_path(const BratteliGraph& g, int v, int n, std::mt19937_64& rng) {
    auto out = g.out_edges();
    std::vector<int> p;
    for (int i = 0; i < n; ++i) {
        const auto& opts = out[v];
        std::uniform_int_distribution<size_t> pick(0, opts.size() - 1);
        int e = opts[pick(rng)];
        p.push_back(e);
        v = g.edges[e].range;
    }
    return p;
}

PathWord to_telescoped(const BratteliGraph& g, const BratteliGraph& gp, int p, const PathWord& w) {
    if (w.edges.size() % p != 0)
        throw Error(ErrorCode::InvalidArgument, "word length must be a multiple of p");
    PathWord out{{}, w.mode};
    for (size_t i = 0; i < w.edges.size(); i += p) {
        std::string id;
        for (int k = 0; k < p; ++k) id += (k ? "." : "") + g.edges[w.edges[i + k]].id;
        int e = gp.edge_index(id);
        if (e < 0) throw Error(ErrorCode::InvalidArgument, "block " + id + " not in telescoped graph");
        out.edges.push_back(e);
    }
    return out;
}

LipschitzCheck telescoping_lipschitz_check(const BratteliGraph& g, int p, int samples, int depth,
                                           std::uint64_t seed) {
    if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    int m = (depth + p - 1) / p;
    int N = m * p;
    BratteliGraph gp = telescope(g, p);
    HDistance hd(g), hdp(gp);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vpick(0, g.num_vertices() - 1);
    LipschitzCheck res;
    res.bound_high = std::pow(g.rho, 1 - p);
    res.c_low = std::numeric_limits<double>::infinity();
    res.c_high = 0;
    res.all_pass = true;
    while (res.samples < samples) {
        int v = vpick(rng);
        PathWord x{random_path(g, v, N, rng), PathMode::TauExtended};
        PathWord y{random_path(g, v, N, rng), PathMode::TauExtended};
        if (x == y) continue;
        double d = connes_distance(g, hd, x, y, N).value;
        double dp = connes_distance(gp, hdp, to_telescoped(g, gp, p, x), to_telescoped(g, gp, p, y), m).value;
        double ratio = d / dp;
        res.c_low = std::min(res.c_low, ratio);
        res.c_high = std::max(res.c_high, ratio);
        if (ratio < res.bound_low * (1 - 1e-12) || ratio > res.bound_high * (1 + 1e-12))
            res.all_pass = false;
        ++res.samples;
    }
    return res;
}

} // namespace bspec
