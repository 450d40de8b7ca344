#include "bspec/observable.hpp"

#include <cmath>

namespace bspec {

namespace {

constexpr int kCircleDepth = 64;

std::vector<int> extended(const BratteliGraph& g, const std::vector<int>& w, int depth) {
    if (static_cast<int>(w.size()) >= depth) return w;
    return tau_extend(g, PathWord{w, PathMode::Truncated}, depth).edges;
}

} // namespace

CylinderObs cylinder_indicator(const BratteliGraph& g, const std::vector<int>& gamma) {
    CylinderObs c;
    c.depth = static_cast<int>(gamma.size());
    for (const auto& p : all_paths(g, c.depth)) c.table[p] = p == gamma ? 1.0 : 0.0;
    return c;
}

int observable_depth(const ObservableFn& f) {
    return std::visit(
        [](const auto& o) -> int {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, CylinderObs> || std::is_same_v<T, SampledObs>)
                return o.depth;
            else
                return kCircleDepth;
        },
        f);
}

double circle_embed(const BratteliGraph& g, const std::vector<int>& word) {
    if (g.num_vertices() != 1 || g.num_edges() != 2)
        throw Error(ErrorCode::WrongGraph, "circle embedding needs one vertex with two loops");
    auto w = extended(g, word, kCircleDepth);
    double x = 0, scale = 0.5;
    for (int i = 0; i < kCircleDepth; ++i, scale *= 0.5) x += w[i] * scale;
    return x;
}

std::complex<double> evaluate(const BratteliGraph& g, const ObservableFn& f,
                              const std::vector<int>& word) {
    if (const auto* c = std::get_if<CylinderObs>(&f)) {
        auto w = extended(g, word, c->depth);
        w.resize(c->depth);
        auto it = c->table.find(w);
        if (it == c->table.end()) throw Error(ErrorCode::InvalidArgument, "cylinder table not total");
        return it->second;
    }
    if (const auto* s = std::get_if<SampledObs>(&f)) {
        auto w = extended(g, word, s->depth);
        w.resize(s->depth);
        return s->fn(w);
    }
    if (const auto* t = std::get_if<CircleTrigObs>(&f)) {
        double x = circle_embed(g, word);
        std::complex<double> v = 0;
        for (const auto& [k, ck] : t->coeffs) v += ck * std::polar(1.0, 2 * M_PI * k * x);
        return v;
    }
    throw Error(ErrorCode::WrongGraph, "eigenfunction observables live on tilings");
}

} // namespace bspec
