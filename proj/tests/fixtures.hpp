#ifndef BSPEC_TEST_FIXTURES_HPP
#define BSPEC_TEST_FIXTURES_HPP

#include <string>
#include <vector>

#include "bspec/graph.hpp"
#include "bspec/io.hpp"
#include "bspec/tiling.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(BSPEC_DATA) + "/" + name; }

inline bspec::BratteliGraph load(const std::string& name) {
    return bspec::build_graph(bspec::load_graph_spec(data(name)));
}

inline bspec::BratteliGraph load(const std::string& name, double rho) {
    auto s = bspec::load_graph_spec(data(name));
    s.rho = rho;
    return bspec::build_graph(s);
}

inline bspec::Substitution1D substitution(const std::string& name) {
    return bspec::build_substitution(bspec::load_rules(data(name)));
}

// One vertex with k loops, maximal H.
inline bspec::BratteliGraph loops(int k, double rho) {
    bspec::GraphSpec s;
    s.vertices = {"o"};
    for (int i = 0; i < k; ++i) s.edges.push_back({std::to_string(i), "o", "o"});
    s.star_edge = "0";
    s.tau_auto = true;
    s.horizontal_maximal = true;
    s.rho = rho;
    return bspec::build_graph(s);
}

// Graph with A_{ij} parallel edges i -> j, star = first loop at vertex 0, maximal H.
inline bspec::BratteliGraph from_matrix(const std::vector<std::vector<int>>& a, double rho) {
    bspec::GraphSpec s;
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) s.vertices.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < a[i][j]; ++k)
                s.edges.push_back({"e" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k),
                                   s.vertices[i], s.vertices[j]});
    s.star_edge = "e0_0_0";
    s.tau_auto = true;
    s.horizontal_maximal = true;
    s.rho = rho;
    return bspec::build_graph(s);
}

inline const std::vector<std::string>& graph_fixtures() {
    static const std::vector<std::string> f{"dyadic.json", "fib.json", "trib.json", "ev1.json"};
    return f;
}

} // namespace fixtures

#endif
