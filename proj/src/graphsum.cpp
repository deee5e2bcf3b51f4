#include "anomalab/graphsum.hpp"

#include <algorithm>
#include <functional>

namespace anomalab {

GraphSum::GraphSum(const Target& t, int N, int K) : g_(build_generators(t, N)), N_(N), K_(K) {
    if (t.kind == TargetKind::Quintic) throw ConfigError("no graph sum for the formal quintic");
    RowData rows = row_data(g_);
    for (int i = 0; i <= t.n; ++i) {
        AsymptoticExpansion a = solve_asymptotics(g_, i, K);
        S_.push_back(anomalab::s_matrix(g_, a, rows));
        const auto& R = S_.back().R[0];
        QSeries inv = R[0].invert();
        R0inv_.push_back(inv);
        std::vector<QSeries> tv(K + 2, QSeries(N));
        for (int j = 2; j <= K + 1; ++j) tv[j] = (j % 2 ? -R[j - 1] : R[j - 1]) * inv;
        tvals_.push_back(tv);
        for (int gv = 0; gv <= 2; ++gv) vclass_[{gv, i}] = vertex_class_expand(gv, t, i);
    }
    for (int i = 0; i <= t.n; ++i)
        for (int j = 0; j <= t.n; ++j) kernels_.emplace(std::make_pair(i, j), edge_kernel(t, S_[i], S_[j]));
}

QSeries GraphSum::vertex(int g, int i, const std::vector<int>& A) const {
    std::vector<int> key = A;
    std::sort(key.begin(), key.end());
    key.insert(key.begin(), {g, i});
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = vcache_.find(key);
        if (it != vcache_.end()) return it->second;
    }
    int m = static_cast<int>(A.size());
    if (3 * g - 3 + m > K_) throw ConfigError("z-truncation K too small for a genus " + std::to_string(g) + " vertex of valence " + std::to_string(m));
    std::vector<int> psi;
    for (int a : A) psi.push_back(a - 1);
    QSeries v = correlator_q(g, psi, vclass_.at({g, i}), tvals_[i], N_) * R0inv_[i].ipow(2 * g - 2 + m);
    std::lock_guard<std::mutex> lock(mu_);
    vcache_.emplace(key, v);
    return v;
}

QSeries GraphSum::edge(int i, int j, int b1, int b2) const {
    if (b1 + b2 - 2 > K_ - 1) throw ConfigError("z-truncation K too small for edge A-values (" + std::to_string(b1) + "," + std::to_string(b2) + ")");
    return edge_value(kernels_.at({i, j}), b1, b2);
}

QSeries GraphSum::leg(int i, int cls, int a) const {
    if (cls < 1 || cls > g_.target.n) throw ConfigError("unsupported leg class H^" + std::to_string(cls));
    if (a - 1 > K_) throw ConfigError("z-truncation K too small for a leg with A-value " + std::to_string(a));
    QSeries v = S_[i].P[cls] * S_[i].R[cls][a - 1];
    return (a - 1) % 2 ? -v : v;
}

QSeries GraphSum::edge_x_coefficient(int i, int j, int b1, int b2) const {
    const QSeries& L = g_["L"];
    QSeries v = g_.Li[i] * g_.Li[j] * S_[i].R[1][b1 - 1] * S_[j].R[1][b2 - 1] * L.ipow(3).invert() * Scalar(3);
    return (b1 + b2) % 2 ? -v : v;
}

namespace {

// flags 2e, 2e+1 belong to edge e, flag 2E + k to leg k
std::vector<int> flag_vertices(const StableGraph& G) {
    std::vector<int> fv;
    for (auto [u, w] : G.edges) {
        fv.push_back(u);
        fv.push_back(w);
    }
    for (int l : G.legs) fv.push_back(l);
    return fv;
}

// A-values with sum over the flags of v of (a-1) <= 3 g(v) - 3 + val(v); larger values kill the vertex integral
void for_each_assignment(const StableGraph& G, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> fv = flag_vertices(G);
    std::vector<int> budget(G.vertices());
    for (int v = 0; v < G.vertices(); ++v) budget[v] = 3 * G.genus[v] - 3 + G.valence(v);
    std::vector<int> A(fv.size(), 1);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == fv.size()) {
            f(A);
            return;
        }
        int v = fv[k];
        for (int a = 1; a - 1 <= budget[v]; ++a) {
            A[k] = a;
            budget[v] -= a - 1;
            rec(k + 1);
            budget[v] += a - 1;
        }
        A[k] = 1;
    };
    rec(0);
}

// product of the vertex factors, or nullopt-like zero flag
bool vertex_product(const GraphSum& ctx, const StableGraph& G, const std::vector<int>& A, QSeries& out) {
    std::vector<int> fv = flag_vertices(G);
    out = QSeries::constant(Scalar(1), ctx.order());
    for (int v = 0; v < G.vertices(); ++v) {
        std::vector<int> av;
        for (size_t k = 0; k < fv.size(); ++k)
            if (fv[k] == v) av.push_back(A[k]);
        QSeries x = ctx.vertex(G.genus[v], G.label[v], av);
        if (x.is_zero()) return false;
        out *= x;
    }
    return true;
}

QSeries legs_product(const GraphSum& ctx, const StableGraph& G, const std::vector<int>& classes, const std::vector<int>& A) {
    QSeries out = QSeries::constant(Scalar(1), ctx.order());
    size_t E = G.edges.size();
    for (size_t k = 0; k < G.legs.size(); ++k) out *= ctx.leg(G.label[G.legs[k]], classes[k], A[2 * E + k]);
    return out;
}

}  // namespace

QSeries graph_contribution(const GraphSum& ctx, const StableGraph& G, const std::vector<int>& classes, int* assignments) {
    if (classes.size() != G.legs.size()) throw ConfigError("one insertion class per marking is required");
    QSeries total(ctx.order());
    int count = 0;
    for_each_assignment(G, [&](const std::vector<int>& A) {
        QSeries prod(ctx.order());
        if (!vertex_product(ctx, G, A, prod)) return;
        for (size_t e = 0; e < G.edges.size(); ++e) {
            auto [u, w] = G.edges[e];
            prod *= ctx.edge(G.label[u], G.label[w], A[2 * e], A[2 * e + 1]);
            if (prod.is_zero()) return;
        }
        prod *= legs_product(ctx, G, classes, A);
        if (prod.is_zero()) return;
        ++count;
        total += prod;
    });
    if (assignments) *assignments = count;
    return total * Scalar::frac(1, G.aut);
}

QSeries assemble_F(const GraphSum& ctx, int g, const std::vector<int>& classes, ContributionLedger* ledger) {
    int n = static_cast<int>(classes.size());
    if (g > 2) throw ConfigError("graph sums are supported for g <= 2");
    if (2 * g - 2 + n <= 0) throw ConfigError("unstable (g,n) has no graph sum");
    QSeries total(ctx.order());
    for (const auto& G : enumerate_decorated_graphs(g, n, ctx.target().points())) {
        int count = 0;
        QSeries v = graph_contribution(ctx, G, classes, &count);
        total += v;
        if (ledger) ledger->entries.push_back({G.str(), G.aut, count, v});
    }
    if (ledger) ledger->total = total;
    return total;
}

QSeries d_dT(const GeometrySeries& g, const QSeries& f) { return f.D() * g["C1"].invert(); }

namespace {

// edge image under the equation's generator derivative, at A-values (k, l)
QSeries cut_coefficient_explicit(const GraphSum& ctx, HaeEquation eq, int i, int j, int k, int l) {
    const GeometrySeries& g = ctx.series();
    const SMatrix &Si = ctx.s_matrix(i), &Sj = ctx.s_matrix(j);
    const QSeries &Li = g.Li[i], &Lj = g.Li[j];
    QSeries C1inv2 = g["C1"].ipow(2).invert();
    QSeries v;
    switch (eq) {
        case HaeEquation::KP2: {
            const QSeries& L = g["L"];
            QSeries dX = ctx.edge_x_coefficient(i, j, k, l);
            v = dX * L.ipow(3) * C1inv2 * Scalar::frac(1, 3);
            return v;
        }
        case HaeEquation::KP3Second:
            v = Li * Lj * Si.R[1][k - 1] * Sj.R[1][l - 1] * C1inv2 * Scalar(2);
            break;
        case HaeEquation::KP3First:
            v = (Li * Li * Lj * Si.R[2][k - 1] * Sj.R[1][l - 1] + Li * Lj * Lj * Si.R[1][k - 1] * Sj.R[2][l - 1]) * C1inv2 *
                g["C2"].invert();
            break;
    }
    return (k + l) % 2 ? -v : v;
}

void check_equation(const GraphSum& ctx, HaeEquation eq) {
    TargetKind want = eq == HaeEquation::KP2 ? TargetKind::KP2 : TargetKind::KP3;
    if (ctx.target().kind != want) throw ConfigError("holomorphic anomaly equation does not match the target");
}

}  // namespace

QSeries hae_structural_lhs(const GraphSum& ctx, int g, HaeEquation eq) {
    check_equation(ctx, eq);
    QSeries total(ctx.order());
    for (const auto& G : enumerate_decorated_graphs(g, 0, ctx.target().points())) {
        QSeries graph(ctx.order());
        size_t E = G.edges.size();
        for_each_assignment(G, [&](const std::vector<int>& A) {
            QSeries vp(ctx.order());
            if (!vertex_product(ctx, G, A, vp)) return;
            std::vector<QSeries> ev;
            for (size_t e = 0; e < E; ++e) {
                auto [u, w] = G.edges[e];
                ev.push_back(ctx.edge(G.label[u], G.label[w], A[2 * e], A[2 * e + 1]));
            }
            for (size_t f = 0; f < E; ++f) {
                auto [u, w] = G.edges[f];
                QSeries term = vp * cut_coefficient_explicit(ctx, eq, G.label[u], G.label[w], A[2 * f], A[2 * f + 1]);
                for (size_t e = 0; e < E && !term.is_zero(); ++e)
                    if (e != f) term *= ev[e];
                graph += term;
            }
        });
        total += graph * Scalar::frac(1, G.aut);
    }
    return total;
}

QSeries hae_rhs(const GraphSum& ctx, int g, HaeEquation eq) {
    check_equation(ctx, eq);
    QSeries total(ctx.order());
    int second = eq == HaeEquation::KP3First ? 2 : 1;
    for (int i = 1; i <= g - 1; ++i) total += assemble_F(ctx, g - i, {1}) * assemble_F(ctx, i, {second});
    total += assemble_F(ctx, g - 1, {1, second});
    return eq == HaeEquation::KP2 ? total * Scalar::frac(1, 2) : total;
}

HaeReport hae_check(const GraphSum& ctx, int g, HaeEquation eq) {
    HaeReport r;
    r.lhs = hae_structural_lhs(ctx, g, eq);
    r.rhs = hae_rhs(ctx, g, eq);
    QSeries d = r.lhs - r.rhs;
    r.bad_order = d.valuation();
    r.ok = r.bad_order < 0;
    return r;
}

}  // namespace anomalab
