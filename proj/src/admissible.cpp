#include "anomalab/admissible.hpp"

#include <algorithm>

namespace anomalab {

DiffOp op_add(const DiffOp& a, const DiffOp& b) {
    DiffOp r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
}

// d^j (b F) = sum_r C(j,r) b^{(r)} d^{j-r} F
DiffOp op_mul(const DiffOp& a, const DiffOp& b) {
    if (a.empty() || b.empty()) return {};
    DiffOp r(a.size() + b.size() - 1);
    for (size_t k = 0; k < b.size(); ++k) {
        if (b[k].is_zero()) continue;
        RatFn d = b[k];
        std::vector<RatFn> ders{d};
        for (size_t j = 1; j < a.size(); ++j) ders.push_back(ders.back().derivative());
        for (size_t j = 0; j < a.size(); ++j) {
            if (a[j].is_zero()) continue;
            long binom = 1;
            for (size_t s = 0; s <= j; ++s) {
                r[j - s + k] += a[j] * ders[s] * Scalar(binom);
                binom = binom * static_cast<long>(j - s) / static_cast<long>(s + 1);
            }
        }
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
}

RatFn op_apply(const DiffOp& a, const RatFn& f) {
    RatFn r, d = f;
    for (size_t k = 0; k < a.size(); ++k) {
        if (!a[k].is_zero()) r += a[k] * d;
        d = d.derivative();
    }
    return r;
}

int AdmissibleOperator::nonzero_entries() const {
    int c = 0;
    for (const auto& [k, v] : A) c += !v.is_zero();
    return c;
}

namespace {

Poly P(std::initializer_list<Scalar> c) { return Poly(std::vector<Scalar>(c)); }

Poly f_poly(const Target& t) {
    std::vector<Scalar> c(t.n + 1);
    for (int k = 0; k <= t.n; ++k) c[t.n - k] = Scalar(k % 2 ? -(k + 1) : (k + 1)) * t.s[k + 1];
    return Poly(std::move(c));
}

void set_basis(AdmissibleOperator& op) {
    const Target& t = op.target;
    op.f = f_poly(t);
    if (op.f.degree() == 0) {
        op.degenerate = true;
        op.ell = Poly(Scalar(1));
        op.f_scale = op.f[0];
        op.f_power = 0;
        return;
    }
    if (t.kind == TargetKind::KP1) {
        op.ell = op.f;
        op.f_scale = Scalar(1);
        op.f_power = 1;
    } else if (t.kind == TargetKind::KP2) {
        op.ell = Poly::linear(t.s[1], -t.s[2]);
        op.f_scale = t.s[1].inv();
        op.f_power = 2;
    } else {
        throw AdmissibleError("no linear-factor basis for " + t.name());
    }
    if (!(op.ell.pow(op.f_power) * Poly(op.f_scale) == op.f)) throw AdmissibleError("f is not a power of a linear form at these weights");
}

using ZOp = std::vector<DiffOp>;

ZOp zmul(const ZOp& a, const ZOp& b) {
    ZOp r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = op_add(r[i + j], op_mul(a[i], b[j]));
    return r;
}

ZOp zadd(const ZOp& a, const ZOp& b) {
    ZOp r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < a.size(); ++k) r[k] = op_add(r[k], a[k]);
    for (size_t k = 0; k < b.size(); ++k) r[k] = op_add(r[k], b[k]);
    return r;
}

ZOp zscale(const ZOp& a, const RatFn& c) {
    ZOp r = a;
    for (auto& op : r) op = op_mul(DiffOp{c}, op);
    return r;
}

}  // namespace

AdmissibleOperator transcribed_admissible(const Target& t) {
    AdmissibleOperator op;
    op.target = t;
    op.transcribed = true;
    const Scalar &s1 = t.s[1], &s2 = t.s[2];
    auto sq = [](const Scalar& v) -> Scalar { return v * v; };
    if (t.kind == TargetKind::KP1) {
        set_basis(op);
        op.level = 1;
        RatFn ell(op.ell);
        op.A[{0, 0}] = RatFn(P({-sq(s1) * sq(s2), -s1.pow(3) * s2 + Scalar(8) * s1 * sq(s2), Scalar(2) * s1.pow(4) - Scalar(9) * sq(s1) * s2})) /
                       (ell.pow(4) * Scalar(4));
        op.A[{0, 1}] = RatFn(P({Scalar(2) * s1 * sq(s2), -sq(s1) * s2 - Scalar(8) * sq(s2), -s1.pow(3) + Scalar(10) * s1 * s2, -sq(s1)})) /
                       (ell.pow(3) * Scalar(2));
        op.A[{0, 2}] = RatFn(P({sq(s2), Scalar(-2) * s1 * s2, sq(s1) + s2, -s1})) / ell.pow(2);
        return op;
    }
    if (t.kind != TargetKind::KP2) throw AdmissibleError("coefficient tables exist for kp1 and kp2 only");
    if (s1.is_zero()) throw AdmissibleError("the kp2 tables are singular at s1 = 0");
    set_basis(op);
    op.level = 2;
    RatFn ell(op.ell), x(Poly::x());
    op.A[{0, 0}] = RatFn(P({s1 * s2.pow(3), Scalar(-4) * sq(s1) * sq(s2) + Scalar(3) * s2.pow(3), -s1.pow(3) * s2 + Scalar(12) * s1 * sq(s2),
                            Scalar(11) * s1.pow(4) - Scalar(36) * sq(s1) * s2})) *
                   s1 / (ell.pow(5) * Scalar(9));
    op.A[{0, 1}] = RatFn(P({s2.pow(3), Scalar(-4) * s1 * sq(s2), Scalar(3) * sq(s1) * s2 + Scalar(9) * sq(s2),
                            Scalar(3) * s1.pow(3) - Scalar(21) * s1 * s2, Scalar(3) * sq(s1)})) *
                   (-s1) / (ell.pow(4) * Scalar(3));
    op.A[{0, 2}] = RatFn(P({s2.pow(3), Scalar(-5) * s1 * sq(s2), Scalar(9) * sq(s1) * s2, Scalar(-6) * s1.pow(3) - Scalar(3) * s1 * s2,
                            Scalar(6) * sq(s1)})) *
                   Scalar(-1) / (ell.pow(3) * Scalar(3));
    Poly q10 = P({Scalar(8) * sq(s1) * s2.pow(5) - Scalar(21) * s2.pow(6), Scalar(-48) * s1.pow(3) * s2.pow(4) + Scalar(126) * s1 * s2.pow(5),
                  Scalar(120) * s1.pow(4) * s2.pow(3) - Scalar(315) * sq(s1) * s2.pow(4),
                  Scalar(-124) * s1.pow(5) * sq(s2) + Scalar(264) * s1.pow(3) * s2.pow(3) + Scalar(144) * s1 * s2.pow(4),
                  Scalar(12) * s1.pow(6) * s2 + Scalar(153) * s1.pow(4) * sq(s2) - Scalar(432) * sq(s1) * s2.pow(3),
                  Scalar(60) * s1.pow(7) - Scalar(342) * s1.pow(5) * s2 + Scalar(432) * s1.pow(3) * sq(s2),
                  Scalar(-33) * s1.pow(6) + Scalar(108) * s1.pow(4) * s2});
    op.A[{1, 0}] = x * RatFn(q10) * sq(s1) / (ell.pow(9) * Scalar(27));
    op.A[{1, 1}] = x * RatFn(q10) * (-s1) / (ell.pow(8) * Scalar(27));
    op.A[{1, 2}] = RatFn(P({-s2.pow(6), Scalar(9) * s1 * s2.pow(5), Scalar(-32) * sq(s1) * s2.pow(4) - Scalar(9) * s2.pow(5),
                            Scalar(57) * s1.pow(3) * s2.pow(3) + Scalar(60) * s1 * s2.pow(4),
                            Scalar(-48) * s1.pow(4) * sq(s2) - Scalar(171) * sq(s1) * s2.pow(3),
                            Scalar(9) * s1.pow(5) * s2 + Scalar(237) * s1.pow(3) * sq(s2) + Scalar(27) * s1 * s2.pow(3),
                            Scalar(9) * s1.pow(6) - Scalar(144) * s1.pow(4) * s2 - Scalar(90) * sq(s1) * sq(s2),
                            Scalar(9) * s1.pow(5) + Scalar(108) * s1.pow(3) * s2, Scalar(-18) * s1.pow(4)})) *
                   s1 / (ell.pow(7) * Scalar(9));
    Poly a = P({sq(s2), Scalar(-3) * s1 * s2, Scalar(3) * sq(s1)});
    Poly b = P({sq(s2), Scalar(-3) * s1 * s2, Scalar(3) * sq(s1), Scalar(-3) * s1});
    op.A[{1, 3}] = RatFn(a * b * b) * Scalar(-1) / (ell.pow(6) * Scalar(27));
    return op;
}

AdmissibleOperator derived_admissible(const Target& t) {
    if (t.kind == TargetKind::Quintic) throw AdmissibleError("no admissible system for the formal quintic");
    AdmissibleOperator op;
    op.target = t;
    op.level = t.n;
    op.f = f_poly(t);
    int n = t.n;
    Poly prod(Scalar(1));
    for (const auto& l : t.lambda) prod = prod * Poly::linear(Scalar(1), -l);
    RatFn x(Poly::x());
    RatFn q = RatFn(prod) / (x.pow(n + 1) * t.kappa());
    RatFn g = q / q.derivative();

    // M = L + z (DL) d/dL after conjugation by e^{mu/z}
    ZOp M{DiffOp{x}, DiffOp{RatFn(), g}};
    ZOp left{DiffOp{RatFn(Scalar(1))}};
    for (const auto& l : t.lambda) left = zmul(left, zadd(M, ZOp{DiffOp{RatFn(-l)}}));
    ZOp right{DiffOp{RatFn(Scalar(1))}};
    for (int r = 0; r <= n; ++r) right = zmul(right, zadd(zscale(M, RatFn(Scalar(n + 1))), ZOp{{}, DiffOp{RatFn(Scalar(r))}}));
    RatFn sign(Scalar(n % 2 ? -1 : 1));
    ZOp pf = zadd(left, zscale(right, q * sign));
    if (!pf[0].empty()) throw AdmissibleError("z^0 part of the Picard-Fuchs operator does not vanish on the mirror curve");

    // R = f^{-1/2} Phi turns d/dx into d/dx - f'/2f
    RatFn fr(op.f);
    DiffOp shifted{-fr.derivative() / (fr * Scalar(2)), RatFn(Scalar(1))};
    std::vector<DiffOp> conj;
    for (const auto& o : pf) {
        DiffOp c, power{RatFn(Scalar(1))};
        for (size_t k = 0; k < o.size(); ++k) {
            c = op_add(c, op_mul(DiffOp{o[k]}, power));
            power = op_mul(power, shifted);
        }
        conj.push_back(c);
    }
    const DiffOp& first = conj.at(1);
    if (first.size() != 2 || !first[0].is_zero()) throw AdmissibleError("the z^1 part is not a pure first derivative after normalization");
    RatFn alpha = first[1];
    for (int l = 0; l + 2 < static_cast<int>(conj.size()); ++l)
        for (size_t p = 0; p < conj[l + 2].size(); ++p)
            if (!conj[l + 2][p].is_zero()) op.A[{l, static_cast<int>(p)}] = -conj[l + 2][p] / alpha;

    if (op.f.degree() == 0 || t.kind == TargetKind::KP1 || (t.kind == TargetKind::KP2 && !t.s[1].is_zero())) {
        try {
            set_basis(op);
        } catch (const AdmissibleError&) {
            op.ell = Poly();
        }
    }
    return op;
}

AdmissibleOperator build_admissible(const Target& t) {
    if (t.kind == TargetKind::KP1) return transcribed_admissible(t);
    if (t.kind != TargetKind::KP2) throw AdmissibleError("admissible systems are built for kp1 and specialized kp2 only");
    for (const auto& r : constraint_residuals(t))
        if (!r.is_zero()) throw AdmissibleError("kp2 weights do not satisfy the specialization constraint");
    if (t.s[1].is_zero()) return derived_admissible(t);
    return transcribed_admissible(t);
}

std::map<int, Scalar> ell_powers(const RatFn& a, const Poly& ell) {
    if (ell.degree() != 1) throw AdmissibleError("ell must be linear");
    std::map<int, Scalar> out;
    if (a.is_zero()) return out;
    Poly den = a.den();
    int m = 0;
    Poly qt, r;
    while (den.degree() > 0) {
        divmod(den, ell, qt, r);
        if (!r.is_zero()) throw AdmissibleError("denominator is not a power of the linear factor");
        den = qt;
        ++m;
    }
    // x = (ell - b) / a
    Scalar ia = ell[1].inv();
    Poly in_ell = a.num().substitute_linear(ia, -ell[0] * ia);
    Scalar scale = den[0].inv();
    for (int k = 0; k <= in_ell.degree(); ++k)
        if (!in_ell[k].is_zero()) out[k - m] = in_ell[k] * scale;
    return out;
}

OrderReport order_check(const AdmissibleOperator& op) {
    OrderReport rep;
    rep.degenerate = op.degenerate;
    for (const auto& [lp, a] : op.A) {
        if (a.is_zero()) continue;
        OrderEntry e;
        e.l = lp.first;
        e.p = lp.second;
        e.bound = e.p == 0 ? -2 : e.p == 1 ? 0 : e.p + 1;
        if (op.degenerate) {
            // f is a nonzero constant: R[x]_f = R[x], every coefficient must be a polynomial
            e.low = 0;
            e.high = a.num().degree();
            e.ok = a.is_poly();
        } else {
            auto pw = ell_powers(a, op.ell);
            e.low = pw.begin()->first;
            e.high = pw.rbegin()->first;
            e.ok = e.low <= e.bound;
        }
        rep.ok = rep.ok && e.ok;
        rep.entries.push_back(e);
    }
    return rep;
}

RatFn antiderivative(const RatFn& a, bool* log_term) {
    if (log_term) *log_term = false;
    if (a.is_zero()) return a;
    const Poly& den = a.den();
    int m = den.degree();
    Scalar r = m ? -den[m - 1] / Scalar(m) : Scalar(0);
    Poly base = Poly::linear(Scalar(1), -r);
    if (!(base.pow(m) == den)) throw AdmissibleError("antiderivative needs a single repeated linear factor in the denominator");
    // numerator in y = x - r
    Poly ny = a.num().substitute_linear(Scalar(1), r);
    int top = ny.degree() - m + 1;
    int low = std::min(0, -m + 1);
    std::vector<Scalar> c(std::max(top, 0) - low + 1);
    for (int k = 0; k <= ny.degree(); ++k) {
        int e = k - m;
        if (ny[k].is_zero()) continue;
        if (e == -1) {
            if (log_term) *log_term = true;
            continue;
        }
        c[e + 1 - low] += ny[k] / Scalar(e + 1);
    }
    // sum c_j y^{j+low} = (poly in y) / y^{-low}
    Poly num_y(std::move(c));
    Poly num = num_y.substitute_linear(Scalar(1), -r);
    return RatFn(num, base.pow(-low));
}

namespace {

using Laurent = std::map<int, Scalar>;

Laurent laurent_mul(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) r[i + j] += x * y;
    std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

// d/dx with ell = a x + b
Laurent laurent_dx(const Laurent& f, const Scalar& a) {
    Laurent r;
    for (const auto& [e, c] : f)
        if (e != 0) r[e - 1] = c * a * Scalar(e);
    return r;
}

RatFn laurent_to_ratfn(const Laurent& f, const Poly& ell) {
    if (f.empty()) return RatFn();
    int low = std::min(0, f.begin()->first);
    Poly num;
    for (const auto& [e, c] : f) num += Poly(c) * ell.pow(e - low);
    return RatFn(num, ell.pow(-low));
}

}  // namespace

// Works in the ell-power basis of R[x]_f, where a simple pole term is the only obstruction.
AdmissibleSolution solve_admissible(const AdmissibleOperator& op, int i, int K) {
    AdmissibleSolution sol;
    sol.i = i;
    Poly ell = op.degenerate ? Poly::x() : op.ell;
    if (ell.degree() != 1) throw AdmissibleError("no linear basis to solve in");
    const Scalar& a = ell[1];
    std::map<std::pair<int, int>, Laurent> A;
    for (const auto& [lp, v] : op.A)
        if (!v.is_zero()) A[lp] = ell_powers(v, ell);
    Scalar at = ell.eval(op.target.lambda.at(i));
    std::vector<Laurent> phi{Laurent{{0, Scalar(1)}}};
    sol.Phi.push_back(RatFn(Scalar(1)));
    for (int p = 1; p <= K; ++p) {
        Laurent rhs;
        for (const auto& [lp, v] : A) {
            int src = p - 1 - lp.first;
            if (src < 0) continue;
            Laurent d = phi[src];
            for (int k = 0; k < lp.second; ++k) d = laurent_dx(d, a);
            for (const auto& [e, c] : laurent_mul(v, d)) rhs[e] += c;
        }
        Laurent next;
        Scalar value;
        for (const auto& [e, c] : rhs) {
            if (c.is_zero()) continue;
            if (e == -1) {
                sol.obstruction_k = p;
                sol.obstruction = "the right side for Phi_" + std::to_string(p) + " has an ell^-1 term";
                return sol;
            }
            Scalar v = c / (a * Scalar(e + 1));
            next[e + 1] = v;
            value += v * at.pow(e + 1);
        }
        next[0] -= value;
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        phi.push_back(next);
        sol.Phi.push_back(laurent_to_ratfn(next, ell));
    }
    return sol;
}

CrossReport cross_validate(const AdmissibleSolution& sol, const AdmissibleOperator& op, const GeometrySeries& g, const AsymptoticExpansion& a) {
    CrossReport rep;
    const QSeries& L = g.Li.at(sol.i);
    Scalar f0 = op.f.eval(op.target.lambda.at(sol.i));
    QSeries norm = (op.f.eval(L) * f0.inv()).pow(mpq_class(-1, 2));
    for (size_t k = 0; k < sol.Phi.size() && k < a.R.size(); ++k) {
        QSeries d = norm * sol.Phi[k].eval(L) - a.R[k];
        int v = d.valuation();
        if (v >= 0) {
            rep.ok = false;
            rep.bad_k = static_cast<int>(k);
            rep.bad_order = v;
            return rep;
        }
    }
    return rep;
}

}  // namespace anomalab
