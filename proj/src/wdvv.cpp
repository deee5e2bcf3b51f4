#include "anomalab/asymptotics.hpp"

#include <functional>

namespace anomalab {

namespace {

using Residuals = std::vector<Scalar>;
using Evaluator = std::function<Residuals(const std::vector<QSeries>&, int)>;

bool all_zero(const Residuals& r) {
    for (auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

Residuals minus(const Residuals& a, const Residuals& b) {
    Residuals r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

// Solves for the unknown series coefficient by coefficient. The unknowns are D-images, so their
// constant terms vanish and the q^0 identity is only checked. The coefficient of q^d first
// influences the residuals at some later order e; that order is located, the dependence is
// checked to be affine there, and the square system is solved exactly.
std::vector<QSeries> solve_order_by_order(int m, int N, const Evaluator& eval) {
    std::vector<QSeries> x(m, QSeries(N));
    int last = N;
    if (!all_zero(eval(x, 0))) throw AsymptoticError("identity fails at q^0");
    int e = 1;
    for (int d = 1; d <= N; ++d) {
        bool solved = false;
        for (e = std::max(e, d); e <= N; ++e) {
            Residuals base = eval(x, e);
            std::vector<Residuals> cols;
            for (int u = 0; u < m; ++u) {
                auto y = x;
                y[u][d] += Scalar(1);
                cols.push_back(minus(eval(y, e), base));
            }
            Scalar det = m == 1 ? cols[0][0] : cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1];
            if (det.is_zero()) {
                if (!all_zero(base)) throw AsymptoticError("identity fails at q^" + std::to_string(e) + " independently of the unknowns");
                continue;
            }
            // affine in the new coefficients at this order
            auto y = x;
            for (int u = 0; u < m; ++u) y[u][d] += Scalar(2);
            Residuals twice = minus(eval(y, e), base);
            for (size_t k = 0; k < twice.size(); ++k) {
                Scalar lin;
                for (int u = 0; u < m; ++u) lin += cols[u][k] * Scalar(2);
                if (twice[k] != lin) throw AsymptoticError("identity is not affine in the unknowns at q^" + std::to_string(e));
            }
            if (m == 1) {
                x[0][d] = -base[0] / det;
            } else {
                x[0][d] = (-base[0] * cols[1][1] + base[1] * cols[1][0]) / det;
                x[1][d] = (-base[1] * cols[0][0] + base[0] * cols[0][1]) / det;
            }
            solved = true;
            ++e;
            break;
        }
        if (!solved) {
            last = d - 1;
            break;
        }
    }
    if (last < 0) throw AsymptoticError("order too small to recover any coefficient");
    for (auto& s : x) s = s.truncate(last);
    return x;
}

Residuals identities(const GeometrySeries& g, const AsymptoticExpansion& a, const RowData& rows, int e, bool with_degree4) {
    SMatrix S = s_matrix(g, a, rows);
    BiLaurent W = pairing(g.target, S, S);
    Residuals r = {wdvv_degree(W, 2)[e]};
    if (with_degree4) r.push_back(wdvv_degree(W, 4)[e]);
    return r;
}

}  // namespace

QSeries recover_N2(const GeometrySeries& g, const AsymptoticExpansion& a) {
    const Target& t = g.target;
    if (t.kind != TargetKind::KP2) throw ConfigError("N2 recovery is defined for kp2");
    if (t.s[1].is_zero()) throw ConfigError("N2 enters the rows through s1 N2; s1 = 0 hides it");
    if (a.R.size() < 3) throw AsymptoticError("N2 recovery needs R_0..R_2");
    RowData rows = row_data(g);
    auto sol = solve_order_by_order(1, g.order, [&](const std::vector<QSeries>& x, int e) {
        rows.c[1][1] = x[0] * t.s[1];
        return identities(g, a, rows, e, false);
    });
    return sol[0];
}

RecoveredE recover_E(const GeometrySeries& g, const AsymptoticExpansion& a) {
    const Target& t = g.target;
    if (t.kind != TargetKind::KP3) throw ConfigError("E recovery is defined for kp3");
    if (a.R.size() < 5) throw AsymptoticError("E recovery needs R_0..R_4");
    RowData rows = row_data(g);
    auto sol = solve_order_by_order(2, g.order, [&](const std::vector<QSeries>& x, int e) {
        rows.c[1][1] = x[0];
        rows.c[2][1] = x[1];
        return identities(g, a, rows, e, true);
    });
    int M = sol[0].order();
    QSeries Liinv = g.Li[a.i].truncate(M).invert();
    return {sol[0] * Liinv, g["C2"].truncate(M) * sol[1] * Liinv * Liinv};
}

namespace {

RelationResult compare(const std::string& name, const QSeries& a, const QSeries& b) {
    int M = std::min(a.order(), b.order());
    int v = (a.truncate(M) - b.truncate(M)).valuation();
    return {name, v < 0, v};
}

}  // namespace

std::vector<RelationResult> wdvv_suite(const GeometrySeries& g, int K) {
    const Target& t = g.target;
    std::vector<RelationResult> out;
    RowData rows = row_data(g);
    std::vector<AsymptoticExpansion> as;
    std::vector<SMatrix> S;
    for (int i = 0; i <= t.n; ++i) {
        as.push_back(solve_asymptotics(g, i, std::max(K, 4)));
        S.push_back(s_matrix(g, as.back(), rows));
    }
    for (int i = 0; i <= t.n; ++i)
        for (int j = 0; j <= t.n; ++j) {
            UnitarityReport u = unitarity_check(t, S[i], S[j]);
            out.push_back({"unitarity_" + std::to_string(i) + std::to_string(j), u.ok, u.bad_q_order});
        }
    for (int i = 0; i <= t.n; ++i) {
        std::string idx = std::to_string(i);
        if (t.kind == TargetKind::KP2 && !t.s[1].is_zero()) {
            out.push_back(compare("N2_recovered_" + idx, recover_N2(g, as[i]), g["N2"]));
        } else if (t.kind == TargetKind::KP3) {
            RecoveredE e = recover_E(g, as[i]);
            QSeries Liinv = g.Li[i].invert();
            out.push_back(compare("E11_recovered_" + idx, e.E11, g["J11"].D() * Liinv));
            out.push_back(compare("E22_recovered_" + idx, e.E22, g["C2"] * g["K12"].D() * Liinv * Liinv));
        }
    }
    return out;
}

}  // namespace anomalab
