#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace anomalab {

// Stable graph with optional fixed-point labels. Edges are stored with u <= w;
// u == w is a self-edge. legs[k] is the vertex carrying marking k.
struct StableGraph {
    std::vector<int> genus;
    std::vector<int> label;  // empty when undecorated
    std::vector<std::pair<int, int>> edges;
    std::vector<int> legs;
    long aut = 1;

    int vertices() const { return static_cast<int>(genus.size()); }
    int h1() const { return static_cast<int>(edges.size()) - vertices() + 1; }
    int total_genus() const;
    int valence(int v) const;
    bool connected() const;
    bool stable() const;
    std::string str() const;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// all stable graphs of genus g with n labeled legs, up to isomorphism, with |Aut|
std::vector<StableGraph> enumerate_stable_graphs(int g, int n);
// the same with every vertex labeled by one of `points` fixed points
std::vector<StableGraph> enumerate_decorated_graphs(int g, int n, int points);
// number of vertex permutations preserving the graph (labels and legs included)
long vertex_symmetries(const StableGraph& G);

}  // namespace anomalab
