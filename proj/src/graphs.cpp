#include "anomalab/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace anomalab {

namespace {

// genus, label, sorted edges, legs under the vertex relabeling perm (old -> new)
std::vector<int> image(const StableGraph& G, const std::vector<int>& perm) {
    int V = G.vertices();
    std::vector<int> inv(V);
    for (int v = 0; v < V; ++v) inv[perm[v]] = v;
    std::vector<int> out;
    for (int v = 0; v < V; ++v) out.push_back(G.genus[inv[v]]);
    for (int v = 0; v < V && !G.label.empty(); ++v) out.push_back(G.label[inv[v]]);
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : G.edges) e.push_back(std::minmax(perm[a], perm[b]));
    std::sort(e.begin(), e.end());
    for (auto [a, b] : e) {
        out.push_back(a);
        out.push_back(b);
    }
    for (int l : G.legs) out.push_back(perm[l]);
    return out;
}

std::vector<int> canonical(const StableGraph& G, long* symmetries) {
    std::vector<int> perm(G.vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> self = image(G, perm), best = self;
    long count = 0;
    do {
        auto im = image(G, perm);
        if (im == self) ++count;
        best = std::min(best, im);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (symmetries) *symmetries = count;
    return best;
}

StableGraph from_canonical(const std::vector<int>& c, int V, bool labeled, int E, int n) {
    StableGraph G;
    size_t p = 0;
    for (int v = 0; v < V; ++v) G.genus.push_back(c[p++]);
    if (labeled)
        for (int v = 0; v < V; ++v) G.label.push_back(c[p++]);
    for (int e = 0; e < E; ++e, p += 2) G.edges.emplace_back(c[p], c[p + 1]);
    for (int k = 0; k < n; ++k) G.legs.push_back(c[p++]);
    return G;
}

long factorial(int n) {
    long r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

long automorphisms(const StableGraph& G) {
    long a = vertex_symmetries(G);
    std::map<std::pair<int, int>, int> mult;
    for (auto e : G.edges) ++mult[e];
    for (auto& [e, m] : mult) {
        a *= factorial(m);
        if (e.first == e.second) a *= 1L << m;
    }
    return a;
}

}  // namespace

int StableGraph::total_genus() const { return std::accumulate(genus.begin(), genus.end(), 0) + h1(); }

int StableGraph::valence(int v) const {
    int c = 0;
    for (auto [a, b] : edges) c += (a == v) + (b == v);
    for (int l : legs) c += (l == v);
    return c;
}

bool StableGraph::connected() const {
    int V = vertices();
    std::vector<int> comp(V);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (auto [a, b] : edges) comp[find(a)] = find(b);
    for (int v = 0; v < V; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

bool StableGraph::stable() const {
    for (int v = 0; v < vertices(); ++v)
        if (2 * genus[v] - 2 + valence(v) <= 0) return false;
    return true;
}

std::string StableGraph::str() const {
    std::ostringstream os;
    os << "V[";
    for (int v = 0; v < vertices(); ++v) {
        os << (v ? "," : "") << "g" << genus[v];
        if (!label.empty()) os << "p" << label[v];
    }
    os << "] E[";
    for (size_t e = 0; e < edges.size(); ++e) os << (e ? "," : "") << edges[e].first << "-" << edges[e].second;
    os << "] L[";
    for (size_t k = 0; k < legs.size(); ++k) os << (k ? "," : "") << legs[k];
    os << "] aut " << aut;
    return os.str();
}

long vertex_symmetries(const StableGraph& G) {
    long s = 0;
    canonical(G, &s);
    return s;
}

std::vector<StableGraph> enumerate_stable_graphs(int g, int n) {
    if (2 * g - 2 + n <= 0) throw GraphError("unstable (g,n) has no stable graphs");
    std::set<std::vector<int>> seen;
    std::vector<StableGraph> out;
    for (int V = 1; V <= 2 * g - 2 + n; ++V) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < V; ++a)
            for (int b = a; b < V; ++b) pairs.emplace_back(a, b);
        std::vector<int> gen(V, 0);
        std::function<void(int, int)> genus_loop = [&](int v, int left) {
            if (v == V) {
                int E = left + V - 1;
                if (E < 0) return;
                // edge multisets as nondecreasing index sequences into pairs
                std::vector<int> idx(E, 0);
                std::function<void(int, int)> edge_loop = [&](int k, int from) {
                    if (k == E) {
                        int legs_total = 1;
                        for (int j = 0; j < n; ++j) legs_total *= V;
                        for (int code = 0; code < legs_total; ++code) {
                            StableGraph G;
                            G.genus = gen;
                            for (int e : idx) G.edges.push_back(pairs[e]);
                            for (int j = 0, c = code; j < n; ++j, c /= V) G.legs.push_back(c % V);
                            if (!G.connected() || !G.stable()) continue;
                            auto key = canonical(G, nullptr);
                            if (!seen.insert(key).second) continue;
                            StableGraph C = from_canonical(key, V, false, E, n);
                            C.aut = automorphisms(C);
                            out.push_back(C);
                        }
                        return;
                    }
                    for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
                        idx[k] = p;
                        edge_loop(k + 1, p);
                    }
                };
                edge_loop(0, 0);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                gen[v] = x;
                genus_loop(v + 1, left - x);
            }
        };
        genus_loop(0, g);
    }
    return out;
}

std::vector<StableGraph> enumerate_decorated_graphs(int g, int n, int points) {
    std::vector<StableGraph> out;
    for (const auto& base : enumerate_stable_graphs(g, n)) {
        int V = base.vertices();
        std::set<std::vector<int>> seen;
        int total = 1;
        for (int v = 0; v < V; ++v) total *= points;
        for (int code = 0; code < total; ++code) {
            StableGraph G = base;
            G.label.clear();
            for (int v = 0, c = code; v < V; ++v, c /= points) G.label.push_back(c % points);
            auto key = canonical(G, nullptr);
            if (!seen.insert(key).second) continue;
            StableGraph C = from_canonical(key, V, true, static_cast<int>(G.edges.size()), n);
            C.aut = automorphisms(C);
            out.push_back(C);
        }
    }
    return out;
}

}  // namespace anomalab
