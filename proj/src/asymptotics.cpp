#include "anomalab/asymptotics.hpp"

namespace anomalab {

namespace {

using ZRow = std::vector<QSeries>;

// (a + b z D + c z) applied to f, truncated at z^zmax
ZRow apply_factor(const QSeries& a, const Scalar& b, const Scalar& c, const ZRow& f, int zmax) {
    int N = a.order();
    ZRow out(zmax + 1, QSeries(N));
    for (int k = 0; k <= zmax; ++k) {
        if (k < static_cast<int>(f.size())) out[k] += a * f[k];
        if (k >= 1 && k - 1 < static_cast<int>(f.size())) {
            if (!b.is_zero()) out[k] += f[k - 1].D() * b;
            if (!c.is_zero()) out[k] += f[k - 1] * c;
        }
    }
    return out;
}

QSeries one(int order) { return QSeries::constant(Scalar(1), order); }

}  // namespace

std::vector<QSeries> conjugated_pf(const Target& t, const QSeries& Li, const std::vector<QSeries>& f, int zmax) {
    if (t.kind == TargetKind::Quintic) throw ConfigError("no Picard-Fuchs asymptotics for the formal quintic");
    int N1 = t.n + 1;
    ZRow a = f;
    for (int j = 0; j < N1; ++j) a = apply_factor(Li - t.lambda[j], Scalar(1), Scalar(0), a, zmax);
    ZRow b = f;
    for (int r = 0; r < N1; ++r) b = apply_factor(Li * Scalar(N1), Scalar(N1), Scalar(r), b, zmax);
    for (int k = 0; k <= zmax; ++k) {
        QSeries qb = b[k].shift(1);
        if (N1 % 2 == 0) a[k] -= qb;
        else a[k] += qb;
    }
    return a;
}

AsymptoticExpansion solve_asymptotics(const GeometrySeries& g, int i, int K) {
    const Target& t = g.target;
    int N = g.order;
    const QSeries& Li = g.Li[i];
    AsymptoticExpansion out;
    out.i = i;
    out.mu = (Li - t.lambda[i]).Dinv();

    // A = dP0/dx at L_i, B = [Omega(1)]_{z^1}
    int N1 = t.n + 1;
    QSeries A(N);
    for (int j = 0; j < N1; ++j) {
        QSeries p = one(N);
        for (int l = 0; l < N1; ++l)
            if (l != j) p *= Li - t.lambda[l];
        A += p;
    }
    Scalar lead = Scalar(N1).pow(N1 + 1);
    QSeries tail = Li.ipow(t.n).shift(1) * lead;
    if (N1 % 2 == 0) A -= tail;
    else A += tail;

    ZRow unit = {one(N)};
    ZRow om = conjugated_pf(t, Li, unit, 1);
    if (!om[0].is_zero()) throw AsymptoticError("L_" + std::to_string(i) + " is not a root of the defining polynomial");
    QSeries B = om[1];
    QSeries Ainv = A.invert();

    QSeries rate = -(B * Ainv);
    if (!rate[0].is_zero()) throw AsymptoticError("R_0 equation has a logarithmic term");
    QSeries R0 = rate.Dinv().exp();
    out.R.push_back(R0);
    QSeries denom = (A * R0).invert();
    for (int k = 1; k <= K; ++k) {
        ZRow G = conjugated_pf(t, Li, out.R, k + 1);
        QSeries rhs = -(G[k + 1] * denom);
        if (!rhs[0].is_zero())
            throw AsymptoticError("R_" + std::to_string(k) + " at fixed point " + std::to_string(i) + " has a logarithmic term");
        out.R.push_back(R0 * rhs.Dinv());
    }
    return out;
}

int asymptotic_residual(const GeometrySeries& g, const AsymptoticExpansion& a) {
    int K = static_cast<int>(a.R.size()) - 1;
    ZRow r = conjugated_pf(g.target, g.Li[a.i], a.R, K + 1);
    for (int k = 0; k <= K + 1; ++k)
        if (!r[k].is_zero()) return k;
    return -1;
}

RowData row_data(const GeometrySeries& g) {
    const Target& t = g.target;
    int N = g.order;
    RowData d;
    d.C.push_back(one(N));
    d.C.push_back(g["C1"]);
    d.c.push_back({QSeries(N)});
    switch (t.kind) {
        case TargetKind::KP1: break;
        case TargetKind::KP2:
            d.C.push_back(g["C2"]);
            d.c.push_back({QSeries(N), g["N2"] * t.s[1]});
            break;
        case TargetKind::KP3:
            d.C.push_back(g["C2"]);
            d.C.push_back(g["C3"]);
            d.c.push_back({QSeries(N), g["J11"].D()});
            d.c.push_back({QSeries(N), g["K12"].D(), g["K11"].D()});
            break;
        case TargetKind::Quintic: throw ConfigError("no S-matrix rows for the formal quintic");
    }
    return d;
}

RowData row_data(const Birkhoff& b) { return {b.C, b.c}; }

SMatrix s_matrix(const GeometrySeries& g, const AsymptoticExpansion& a, const RowData& rows) {
    const Target& t = g.target;
    int N = g.order, K = static_cast<int>(a.R.size()) - 1;
    const QSeries& Li = g.Li[a.i];
    QSeries Liinv = Li.invert();
    SMatrix S;
    S.i = a.i;
    S.mu = a.mu;
    S.P.push_back(one(N));
    S.R.push_back(a.R);
    for (int j = 0; j < t.n; ++j) {
        S.P.push_back(S.P[j] * Li * rows.C[j + 1].invert());
        QSeries logD = S.P[j].D() * S.P[j].invert();
        std::vector<QSeries> ratio;  // P_m / (P_j L_i)
        QSeries Pjinv = (S.P[j] * Li).invert();
        for (int m = 0; m <= j; ++m) ratio.push_back(rows.c[j][m] * S.P[m] * Pjinv);
        std::vector<QSeries> next;
        for (int k = 0; k <= K; ++k) {
            QSeries v = S.R[j][k];
            if (k >= 1) v += (S.R[j][k - 1].D() + S.R[j][k - 1] * logD) * Liinv;
            for (int m = 0; m <= j; ++m)
                if (!ratio[m].is_zero()) v -= ratio[m] * S.R[m][k];
            next.push_back(v);
        }
        S.R.push_back(next);
    }
    return S;
}

SMatrix s_matrix_displayed(const GeometrySeries& g, const AsymptoticExpansion& a) {
    const Target& t = g.target;
    int N = g.order, K = static_cast<int>(a.R.size()) - 1;
    const QSeries& Li = g.Li[a.i];
    QSeries Liinv = Li.invert();
    QSeries dLterm = Li.D() * Liinv * Liinv;
    SMatrix S;
    S.i = a.i;
    S.mu = a.mu;
    S.P.push_back(one(N));
    S.R.push_back(a.R);
    auto at = [&](int j, int k) { return k < 0 ? QSeries(N) : S.R[j][k]; };

    // R_{1,p+1} = R_{0,p+1} + D R_{0,p} / L_i
    std::vector<QSeries> r1;
    for (int k = 0; k <= K; ++k) r1.push_back(at(0, k) + at(0, k - 1).D() * Liinv);
    S.R.push_back(r1);
    S.P.push_back(Li * g["C1"].invert());
    if (t.n == 1) return S;

    if (t.kind == TargetKind::KP2) {
        QSeries mid = dLterm - g["X"] * Liinv;
        QSeries c11 = g["N2"] * t.s[1] * Liinv;
        std::vector<QSeries> r2;
        for (int k = 0; k <= K; ++k) r2.push_back(at(1, k) + at(1, k - 1).D() * Liinv + mid * at(1, k - 1) - c11 * at(1, k));
        S.R.push_back(r2);
        S.P.push_back(S.P[1] * Li * g["C2"].invert());
        return S;
    }

    QSeries E11 = g["J11"].D() * Liinv, E21 = g["K11"].D() * Liinv;
    QSeries E22 = g["C2"] * g["K12"].D() * Liinv * Liinv;
    QSeries A2 = g["A2"];
    QSeries mid2 = dLterm - A2 * Liinv;
    std::vector<QSeries> r2;
    for (int k = 0; k <= K; ++k) r2.push_back(at(1, k) - E11 * at(1, k) + at(1, k - 1).D() * Liinv + mid2 * at(1, k - 1));
    S.R.push_back(r2);
    S.P.push_back(S.P[1] * Li * g["C2"].invert());
    QSeries mid3 = dLterm * Scalar(2) - A2 * Liinv - g["C2"].D() * g["C2"].invert() * Liinv;
    std::vector<QSeries> r3;
    for (int k = 0; k <= K; ++k)
        r3.push_back(at(2, k) - E21 * at(2, k) - E22 * at(1, k) + at(2, k - 1).D() * Liinv + mid3 * at(2, k - 1));
    S.R.push_back(r3);
    S.P.push_back(S.P[2] * Li * g["C3"].invert());
    return S;
}

std::vector<Scalar> phi_coeffs(const Target& t, int r) {
    // -(n+1) l_r prod_{j != r} (H - l_j) / e_r
    std::vector<Scalar> p = {Scalar(1)};
    for (int j = 0; j <= t.n; ++j) {
        if (j == r) continue;
        std::vector<Scalar> q(p.size() + 1);
        for (size_t k = 0; k < p.size(); ++k) {
            q[k + 1] += p[k];
            q[k] -= p[k] * t.lambda[j];
        }
        p = q;
    }
    Scalar f = Scalar(-(t.n + 1)) * t.lambda[r] / t.e(r);
    for (auto& x : p) x *= f;
    return p;
}

std::vector<QSeries> stripped_row(const SMatrix& S, const std::vector<Scalar>& gamma) {
    int K = static_cast<int>(S.R[0].size()) - 1, N = S.R[0][0].order();
    std::vector<QSeries> out(K + 1, QSeries(N));
    for (size_t m = 0; m < gamma.size(); ++m) {
        if (gamma[m].is_zero()) continue;
        QSeries w = S.P[m] * gamma[m];
        for (int k = 0; k <= K; ++k) out[k] += w * S.R[m][k];
    }
    return out;
}

BiLaurent pairing(const Target& t, const SMatrix& Si, const SMatrix& Sj) {
    int N = Si.R[0][0].order();
    BiLaurent W(N);
    for (int r = 0; r <= t.n; ++r) {
        auto phi = phi_coeffs(t, r);
        std::vector<Scalar> dual = phi;
        for (auto& x : dual) x *= t.e(r);
        W += BiLaurent::outer(stripped_row(Si, phi), stripped_row(Sj, dual), N);
    }
    return W;
}

UnitarityReport unitarity_check(const Target& t, const SMatrix& Si, const SMatrix& Sj) {
    int K = static_cast<int>(Si.R[0].size()) - 1;
    BiLaurent W = pairing(t, Si, Sj);
    if (Si.i == Sj.i) W -= BiLaurent::constant(t.e(Si.i), W.order());
    auto anti = W.on_antidiagonal();
    UnitarityReport rep;
    for (int d = 0; d < static_cast<int>(anti.size()); ++d)
        for (auto& [deg, v] : anti[d])
            if (deg <= K && !v.is_zero()) {
                rep.ok = false;
                rep.bad_q_order = d;
                rep.bad_degree = deg;
                return rep;
            }
    return rep;
}

BiLaurent edge_kernel(const Target& t, const SMatrix& Si, const SMatrix& Sj) {
    int K = static_cast<int>(Si.R[0].size()) - 1;
    BiLaurent W = pairing(t, Si, Sj).truncate_total(K);
    if (Si.i == Sj.i) W -= BiLaurent::exp_inverse_sum(-Si.mu, W.order()) * t.e(Si.i);
    return W.div_xy();
}

QSeries edge_value(const BiLaurent& kernel, int b1, int b2) {
    QSeries v = kernel.coeff_series(b1 - 1, b2 - 1);
    return ((b1 + b2) % 2 == 0) ? v : -v;
}

QSeries wdvv_degree(const BiLaurent& W, int degree) {
    QSeries r(W.order());
    for (int a = 0; a <= degree; ++a) {
        QSeries c = W.coeff_series(a, degree - a);
        r += (a % 2 == 0) ? c : -c;
    }
    return r;
}

}  // namespace anomalab
