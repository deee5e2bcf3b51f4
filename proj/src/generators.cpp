#include "anomalab/generators.hpp"

namespace anomalab {

namespace {

QSeries one(int order) { return QSeries::constant(Scalar(1), order); }

QSeries linear(const Scalar& c0, const Scalar& c1, int order) {
    QSeries s(order);
    s[0] = c0;
    if (order >= 1) s[1] = c1;
    return s;
}

// sum_d coeff(d) q^d for d >= 1
template <class F>
QSeries from_coeffs(int order, F coeff) {
    QSeries s(order);
    for (int d = 1; d <= order; ++d) s[d] = Scalar(coeff(d));
    return s;
}

RelationResult check(const std::string& name, const QSeries& residual) {
    return {name, residual.is_zero(), residual.valuation()};
}

void add_roots(GeometrySeries& g) {
    auto P = defining_polynomial(g.target, g.order);
    for (auto& l : g.target.lambda) g.Li.push_back(newton_root(P, l, g.order));
    // L = (1 - kappa q)^(-1/(n+1))
    g.s["L"] = linear(Scalar(1), -g.target.kappa(), g.order).root(-(g.target.n + 1));
}

void build_kp1(GeometrySeries& g, const HZ& ib) {
    int N = g.order;
    g.s["I1"] = i_coeff(ib, 1, 0);
    g.s["C1"] = one(N) + g.s["I1"].D();
}

void build_kp2(GeometrySeries& g, const HZ& ib) {
    int N = g.order;
    auto& s = g.s;
    s["I1"] = i_coeff(ib, 1, 0);
    s["I20"] = i_coeff(ib, 2, 0);
    s["I21raw"] = i_coeff(ib, 2, 1);
    // the weight-free part of the H/z^2 coefficient (raw = s1 * I21)
    s["I21"] = from_coeffs(N, [](long d) -> mpq_class {
        mpq_class v = 3 * factorial_ratio(3 * d - 1, d, 3) * harmonic(d);
        return d % 2 ? mpq_class(-v) : v;
    });
    s["C1"] = one(N) + s["I1"].D();
    QSeries inv1 = s["C1"].invert();
    s["C2"] = one(N) + ((s["I1"] + s["I20"].D()) * inv1).D();
    s["X"] = s["C1"].D() * inv1;
    QSeries L3 = s["L"].ipow(3);
    s["A2"] = (s["X"] * Scalar(3) + one(N) - L3 * Scalar::frac(1, 2)) * L3.invert();
    s["N2"] = (s["I21"].D() * inv1).D();
}

void build_kp3(GeometrySeries& g, const HZ& ib) {
    int N = g.order;
    auto& s = g.s;
    for (int j = 1; j <= 3; ++j)
        for (int k = 0; k < j; ++k) s["I" + std::to_string(j) + std::to_string(k)] = i_coeff(ib, j, k);
    s["I22"] = QSeries(N);
    s["C1"] = one(N) + s["I10"].D();
    QSeries inv1 = s["C1"].invert();
    s["J10"] = (s["I10"] + s["I20"].D()) * inv1;
    s["J11"] = s["I21"].D() * inv1;
    s["J20"] = (s["I20"] + s["I30"].D()) * inv1;
    s["J21"] = (s["I21"] + s["I31"].D()) * inv1;
    s["J22"] = (s["I22"] + s["I32"].D()) * inv1;
    s["C2"] = one(N) + s["J10"].D();
    QSeries inv2 = s["C2"].invert();
    s["K10"] = (s["J10"] + s["J20"].D()) * inv2;
    s["K11"] = (s["J11"] + s["J21"].D() - s["J11"].D() * s["J10"]) * inv2;
    s["K12"] = (s["J22"].D() - s["J11"].D() * s["J11"]) * inv2;
    s["C3"] = one(N) + s["K10"].D();
    s["A2"] = s["C1"].D() * inv1;
    s["B2"] = s["K11"].D();
    s["B4"] = s["B2"].D();
}

void build_quintic(GeometrySeries& g) {
    int N = g.order;
    auto& s = g.s;
    s["I0"] = one(N) + from_coeffs(N, [](long d) -> mpq_class { return factorial_ratio(5 * d, d, 5); });
    s["I1tail"] = from_coeffs(N, [](long d) -> mpq_class { return 5 * factorial_ratio(5 * d, d, 5) * (harmonic(5 * d) - harmonic(d)); });
    s["C0"] = s["I0"];
    QSeries Ttail = s["I1tail"] * s["I0"].invert();
    s["C1"] = one(N) + Ttail.D();
    QSeries L5inv = s["L"].ipow(5).invert();
    QSeries dc0 = s["C0"].D() * s["C0"].invert();
    QSeries dc1 = s["C1"].D() * s["C1"].invert();
    QSeries ddc0 = dc0.D();
    s["K2"] = -(dc0 * L5inv);
    s["A2"] = (dc1 * Scalar::frac(-1, 5) - dc0 * Scalar::frac(2, 5) - Scalar::frac(3, 25)) * L5inv;
    s["A4"] = (dc0 * dc0 * Scalar::frac(-1, 25) - dc0 * dc1 * Scalar::frac(1, 25) + ddc0 * Scalar::frac(1, 25) + Scalar::frac(2, 625)) *
              L5inv * L5inv;
    QSeries inner = one(N) + dc0 * Scalar(10) + dc0 * dc0 * Scalar(25) + ddc0 * Scalar(25);
    QSeries big = ddc0 * Scalar(125) + dc0 * (one(N) + ddc0 * Scalar(10)) * Scalar(50) - s["L"].ipow(5) * inner * Scalar(5) +
                  ddc0.D() * Scalar(125) - dc0 * dc0 * (dc1 - Scalar(1)) * Scalar(125) + Scalar(4);
    s["A6"] = big * L5inv.ipow(3) * Scalar::frac(1, 31250);
}

}  // namespace

const QSeries& GeometrySeries::operator[](const std::string& name) const {
    auto it = s.find(name);
    if (it == s.end()) throw ConfigError("series '" + name + "' is not defined for " + target.name());
    return it->second;
}

mpq_class harmonic(long d) {
    mpq_class h = 0;
    for (long k = 1; k <= d; ++k) h += mpq_class(1, k);
    return h;
}

mpq_class factorial_ratio(long top, long d, int power) {
    mpz_class num = 1, den = 1, df = 1;
    for (long k = 2; k <= top; ++k) num *= k;
    for (long k = 2; k <= d; ++k) df *= k;
    for (int p = 0; p < power; ++p) den *= df;
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

MirrorMap mirror_map(const Target& t, int order) {
    QSeries tail;
    if (t.kind == TargetKind::Quintic) {
        QSeries I0 = one(order) + from_coeffs(order, [](long d) -> mpq_class { return factorial_ratio(5 * d, d, 5); });
        QSeries I1 = from_coeffs(order, [](long d) -> mpq_class { return 5 * factorial_ratio(5 * d, d, 5) * (harmonic(5 * d) - harmonic(d)); });
        tail = I1 * I0.invert();
    } else {
        tail = i_coeff(ibar(t, order, 1), 1, 0);
    }
    return {LogSeries{Scalar(1), tail}, tail.exp()};
}

GeometrySeries build_generators(const Target& t, int order) {
    GeometrySeries g;
    g.target = t;
    g.order = order;
    add_roots(g);
    g.mirror = mirror_map(t, order);
    if (t.kind == TargetKind::Quintic) {
        build_quintic(g);
        return g;
    }
    HZ ib = ibar(t, order, t.n);
    switch (t.kind) {
        case TargetKind::KP1: build_kp1(g, ib); break;
        case TargetKind::KP2: build_kp2(g, ib); break;
        case TargetKind::KP3: build_kp3(g, ib); break;
        default: break;
    }
    return g;
}

QSeries e22_residual(const GeometrySeries& g, int i, int sign) {
    int N = g.order;
    const auto& s = g.target.s;
    const QSeries &C1 = g["C1"], &L = g["L"], &Li = g.Li[i];
    QSeries L2 = L * L, L4 = L2 * L2, C1sq = C1 * C1;
    QSeries Liinv = Li.invert();
    QSeries E21 = g["K11"].D() * Liinv;
    QSeries E22 = g["C2"] * g["K12"].D() * Liinv * Liinv;
    QSeries first = L4 * (((one(N) * Scalar(-3) + C1 * L2 * Scalar(2) + C1sq * L4) * (s[1] * s[1])) - (C1sq - Scalar(1)) * (Scalar(4) * s[2])) *
                    (C1sq * Li * Li * Scalar(8)).invert();
    QSeries second = (L2 * Scalar(-3) + C1 * L4) * s[1] * (C1 * Li * Scalar(4)).invert() * E21;
    QSeries rhs = first + second * Scalar(sign) - E21 * E21 * Scalar::frac(3, 8);
    return E22 - rhs;
}

std::vector<RelationResult> verify_relations(const GeometrySeries& g) {
    std::vector<RelationResult> out;
    const Target& t = g.target;
    int N = g.order;
    QSeries lead = linear(Scalar(1), -t.kappa(), N);  // coefficient of L^(n+1)

    QSeries sum(N), prod = one(N);
    for (auto& l : g.Li) {
        sum += l;
        prod *= l;
    }
    out.push_back(check("vieta_sum", sum * lead - Scalar(t.s[1])));
    out.push_back(check("vieta_product", prod * lead - Scalar(t.s[t.n + 1])));
    out.push_back(check("L_power", g["L"].ipow(t.n + 1) * lead - Scalar(1)));

    if (t.kind == TargetKind::KP2) {
        const QSeries &C1 = g["C1"], &C2 = g["C2"], &X = g["X"], &L = g["L"];
        QSeries L3m1 = L.ipow(3) - Scalar(1);
        out.push_back(check("C1_C2_product", C1 * C1 * C2 * lead - Scalar(1)));
        out.push_back(check("riccati", X * X - L3m1 * X + X.D() - L3m1 * Scalar::frac(2, 9)));
        out.push_back(check("N2_closed_form", g["N2"] + C2 * Scalar::frac(1, 2) - L.ipow(3) * Scalar::frac(1, 2)));
        out.push_back(check("I21_weight_factor", g["I21raw"] - g["I21"] * t.s[1]));
    } else if (t.kind == TargetKind::KP3) {
        const QSeries &C1 = g["C1"], &C2 = g["C2"], &A2 = g["A2"], &L = g["L"];
        QSeries L4m1 = L.ipow(4) - Scalar(1);
        out.push_back(check("C2_equals_C3", C2 - g["C3"]));
        out.push_back(check("C1_C2_product", C1 * C1 * C2 * C2 * lead - Scalar(1)));
        out.push_back(check("riccati", A2 * A2 - L4m1 * A2 + A2.D() * Scalar(2) - L4m1 * Scalar::frac(3, 16)));
        out.push_back(check("A2_C2_log_derivative", A2 * Scalar(2) + C2.D() * C2.invert() * Scalar(2) - L4m1));
        QSeries L2 = L * L;
        for (int i = 0; i <= t.n; ++i) {
            QSeries Liinv = g.Li[i].invert();
            QSeries E11 = g["J11"].D() * Liinv, E21 = g["K11"].D() * Liinv;
            QSeries rhs = E21 * Scalar::frac(-1, 2) - L2 * t.s[1] * (C1 * g.Li[i] * Scalar(2)).invert() + L2 * L2 * t.s[1] * Liinv * Scalar::frac(1, 2);
            out.push_back(check("E11_" + std::to_string(i), E11 - rhs));
            out.push_back(check("E22_" + std::to_string(i), e22_residual(g, i, 1)));
        }
    }
    return out;
}

}  // namespace anomalab
