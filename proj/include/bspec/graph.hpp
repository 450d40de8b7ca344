#ifndef BSPEC_GRAPH_HPP
#define BSPEC_GRAPH_HPP

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "bspec/error.hpp"

namespace bspec {

using BigInt = mpz_class;

// Square matrix of big integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {}

    static IntMatrix identity(int n);

    int dim() const { return n_; }
    BigInt& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const BigInt& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    IntMatrix transpose() const;
    IntMatrix pow(long e) const;
    bool all_positive() const;
    std::vector<std::vector<double>> to_double() const;

private:
    int n_ = 0;
    std::vector<BigInt> a_;
};

enum class Orientation { Plus, Minus };

struct Edge {
    std::string id;
    int source = 0;
    int range = 0;
};

struct HorizontalPair {
    int from = 0;
    int to = 0;
    Orientation orientation = Orientation::Plus;
};

// Raw, string-keyed description of a graph as read from a spec file.
struct GraphSpec {
    struct EdgeSpec {
        std::string id, source, range;
    };
    struct PairSpec {
        std::string from, to;
        std::string orientation;
    };
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
    std::string star_edge;
    bool tau_auto = false;
    std::vector<std::pair<std::string, std::string>> tau;
    bool horizontal_maximal = false;
    std::vector<PairSpec> horizontal;
    double rho = 0.5;
};

class BratteliGraph {
public:
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    int star_edge = 0;
    std::vector<int> tau;                    // edge -> edge
    std::vector<HorizontalPair> horizontal;  // ordered pairs, both orientations
    double rho = 0.5;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int star_vertex() const { return edges[star_edge].source; }
    int edge_index(const std::string& id) const;
    int vertex_index(const std::string& id) const;

    // Edges grouped by source vertex, in edge order.
    std::vector<std::vector<int>> out_edges() const;
    // Directed distance from each vertex to the star vertex (-1 when unreachable).
    std::vector<int> distance_to_star() const;
    // Common source vertex of a horizontal pair.
    int pair_source(const HorizontalPair& h) const { return edges[h.from].source; }
};

enum class PathMode { Truncated, TauExtended };

struct PathWord {
    std::vector<int> edges;
    PathMode mode = PathMode::Truncated;

    bool operator==(const PathWord& o) const { return edges == o.edges; }
};

struct PrimitivityResult {
    bool primitive = false;
    int witness = 0;           // smallest N with A^N > 0
    std::string certificate;   // reason when not primitive
};

BratteliGraph build_graph(const GraphSpec& spec);
// Validation used by build_graph; returns the list of violated invariants.
std::vector<std::pair<ErrorCode, std::string>> validate_graph(const BratteliGraph& g);

IntMatrix graph_matrix(const BratteliGraph& g);
PrimitivityResult is_primitive(const IntMatrix& a);
IntMatrix path_count(const IntMatrix& a, long n);

PathWord tau_extend(const BratteliGraph& g, const PathWord& w, int depth);
bool is_valid_path(const BratteliGraph& g, const std::vector<int>& edges);

BigInt horizontal_count(const BratteliGraph& g, int n);

// Visits every element of E_n: a common prefix of length n-1 plus a pair from H.
// Callback receives (prefix, pair index).
void for_each_horizontal(const BratteliGraph& g, int n,
                         const std::function<void(const std::vector<int>&, int)>& fn);
// All paths of length n, starting anywhere, in lexicographic edge order.
std::vector<std::vector<int>> all_paths(const BratteliGraph& g, int n);
// Paths of length n starting at vertex v.
std::vector<std::vector<int>> paths_from(const BratteliGraph& g, int v, int n);

BratteliGraph telescope(const BratteliGraph& g, int p);
// Flips every edge; tau and horizontal are left empty for the caller to supply.
BratteliGraph reverse(const BratteliGraph& g);

// tau choosing, for each edge, the first out-edge of its range that moves closer to the star.
std::vector<int> default_tau(const BratteliGraph& g);
// All ordered pairs of distinct edges with common source; + when from < to.
std::vector<HorizontalPair> maximal_horizontal(const BratteliGraph& g);

bool check_connectivity(const BratteliGraph& g);

// Shortest H-path lengths between edges with a common source (-1 if unlinked).
class HDistance {
public:
    explicit HDistance(const BratteliGraph& g);
    int operator()(int e1, int e2) const { return d_[static_cast<size_t>(e1) * n_ + e2]; }
    int max_finite() const;

private:
    int n_;
    std::vector<int> d_;
};

} // namespace bspec

#endif
