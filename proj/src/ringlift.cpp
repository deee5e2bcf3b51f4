#include "anomalab/ringlift.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace anomalab {

int GeneratorBasis::order() const {
    int n = -1;
    for (const auto& g : gens) n = n < 0 ? g.value.order() : std::min(n, g.value.order());
    return n;
}

std::vector<std::vector<int>> GeneratorBasis::monomials() const {
    std::vector<std::vector<int>> out;
    std::vector<int> e(gens.size());
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == gens.size()) {
            out.push_back(e);
            return;
        }
        for (int v = gens[k].lo; v <= gens[k].hi; v += gens[k].step) {
            e[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

QSeries GeneratorBasis::monomial_value(const std::vector<int>& e) const {
    QSeries r = QSeries::constant(Scalar(1), order());
    for (size_t k = 0; k < gens.size(); ++k) {
        if (e[k] == 0) continue;
        QSeries v = gens[k].value.truncate(order());
        r *= e[k] > 0 ? v.ipow(e[k]) : v.invert().ipow(-e[k]);
    }
    return r;
}

int GeneratorBasis::index(const std::string& name) const {
    for (size_t k = 0; k < gens.size(); ++k)
        if (gens[k].name == name) return static_cast<int>(k);
    return -1;
}

GeneratorBasis make_basis(const GeometrySeries& g, const std::vector<GeneratorSpec>& specs) {
    GeneratorBasis b;
    const Target& t = g.target;
    for (const auto& s : specs) {
        if (s.step < 1 || s.hi < s.lo) throw FitError("bad exponent range for " + s.name);
        Generator gen{s.name, QSeries(g.order), s.lo, s.hi, s.step};
        if (g.has(s.name)) {
            gen.value = g[s.name];
        } else if (s.name.size() >= 2 && (s.name[0] == 'L' || s.name[0] == 'g') && std::all_of(s.name.begin() + 1, s.name.end(), ::isdigit)) {
            int i = std::stoi(s.name.substr(1));
            if (i < 0 || i > t.n) throw FitError("no fixed point " + s.name.substr(1));
            const QSeries& Li = g.Li[i];
            if (s.name[0] == 'L') {
                gen.value = Li;
            } else {
                Scalar f0 = t.f(t.lambda[i]);
                gen.value = (t.f(Li) * f0.inv()).pow(mpq_class(-1, 2));
            }
        } else {
            throw FitError("unknown generator " + s.name);
        }
        b.gens.push_back(gen);
    }
    return b;
}

GeneratorBasis kp2_zeta_basis(const GeometrySeries& g, int lo, int hi, int l_step, int a2_max) {
    return make_basis(g, {{"L", lo, hi, l_step}, {"A2", 0, a2_max, 1}});
}

QSeries RingExpression::evaluate(const GeneratorBasis& b) const {
    QSeries r(b.order());
    for (const auto& [e, c] : terms) r += b.monomial_value(e) * c;
    return r;
}

int RingExpression::degree_in(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return terms.empty() ? -1 : 0;
    size_t k = it - names.begin();
    int d = -1;
    for (const auto& [e, c] : terms)
        if (!c.is_zero()) d = std::max(d, e[k]);
    return d;
}

RingExpression RingExpression::derivative(const std::string& name) const {
    RingExpression r;
    r.names = names;
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return r;
    size_t k = it - names.begin();
    for (const auto& [e, c] : terms) {
        if (e[k] == 0 || c.is_zero()) continue;
        auto f = e;
        f[k] -= 1;
        r.terms[f] += c * Scalar(e[k]);
    }
    return r;
}

std::string RingExpression::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (c.is_zero()) continue;
        os << (first ? "" : " + ") << "(" << c.str() << ")";
        first = false;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            os << "*" << names[k];
            if (e[k] != 1) os << "^" << e[k];
        }
    }
    return first ? "0" : os.str();
}

std::string fit_status_name(FitStatus s) {
    switch (s) {
        case FitStatus::Fitted: return "fitted";
        case FitStatus::NotInRing: return "not-in-ring";
        case FitStatus::RankDeficient: return "rank-deficient";
    }
    return "?";
}

LinearSolve solve_linear(std::vector<std::vector<Scalar>> rows, std::vector<Scalar> rhs) {
    LinearSolve out;
    size_t m = rows.size(), n = m ? rows[0].size() : 0;
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && rows[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        Scalar inv = rows[r][c].inv();
        for (size_t j = c; j < n; ++j) rows[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (size_t j = c; j < n; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    out.rank = static_cast<int>(r);
    for (size_t i = r; i < m; ++i)
        if (!rhs[i].is_zero()) out.consistent = false;
    out.x.assign(n, Scalar());
    for (size_t i = 0; i < r; ++i) out.x[pivot_col[i]] = rhs[i];
    if (r < n) {
        // first free column, pivots solved against it
        std::vector<bool> is_pivot(n, false);
        for (int c : pivot_col) is_pivot[c] = true;
        size_t free = 0;
        while (is_pivot[free]) ++free;
        out.kernel.assign(n, Scalar());
        out.kernel[free] = Scalar(1);
        for (size_t i = 0; i < r; ++i) out.kernel[pivot_col[i]] = -rows[i][free];
    }
    return out;
}

FitResult fit_series(const QSeries& F, const GeneratorBasis& b, int margin) {
    FitResult res;
    int N = std::min(F.order(), b.order());
    auto mons = b.monomials();
    res.unknowns = static_cast<int>(mons.size());
    res.margin = margin;
    res.solve_orders = N + 1 - margin;
    if (res.solve_orders < res.unknowns)
        throw FitError("fit needs " + std::to_string(res.unknowns + margin - 1) + " q-orders, have " + std::to_string(N));
    std::vector<QSeries> vals;
    for (const auto& e : mons) vals.push_back(b.monomial_value(e).truncate(N));
    std::vector<std::vector<Scalar>> rows(res.solve_orders, std::vector<Scalar>(mons.size()));
    std::vector<Scalar> rhs(res.solve_orders);
    for (int k = 0; k < res.solve_orders; ++k) {
        for (size_t j = 0; j < mons.size(); ++j) rows[k][j] = vals[j][k];
        rhs[k] = F[k];
    }
    LinearSolve ls = solve_linear(rows, rhs);
    for (const auto& g : b.gens) res.expr.names.push_back(g.name);
    res.kernel.names = res.expr.names;
    if (!ls.kernel.empty()) {
        res.status = FitStatus::RankDeficient;
        for (size_t j = 0; j < mons.size(); ++j)
            if (!ls.kernel[j].is_zero()) res.kernel.terms[mons[j]] = ls.kernel[j];
        return res;
    }
    if (!ls.consistent) {
        res.status = FitStatus::NotInRing;
        return res;
    }
    for (size_t j = 0; j < mons.size(); ++j)
        if (!ls.x[j].is_zero()) res.expr.terms[mons[j]] = ls.x[j];
    QSeries d(N);
    for (size_t j = 0; j < mons.size(); ++j)
        if (!ls.x[j].is_zero()) d += vals[j] * ls.x[j];
    d -= F.truncate(N);
    res.first_bad_order = d.valuation();
    if (res.first_bad_order >= 0) res.status = FitStatus::NotInRing;
    return res;
}

LiftReport lift_in_A2(const QSeries& F, int g, TargetKind kind, const GeneratorBasis& b, int margin) {
    LiftReport rep;
    if (b.index("A2") < 0) throw FitError("basis has no A2 generator");
    rep.bound = kind == TargetKind::KP3 ? 2 * (3 * g - 3) : 3 * g - 3;
    rep.fit = fit_series(F, b, margin);
    if (rep.fit.status != FitStatus::Fitted) return rep;
    rep.a2_degree = std::max(rep.fit.expr.degree_in("A2"), 0);
    rep.within_bound = rep.a2_degree <= rep.bound;
    return rep;
}

}  // namespace anomalab
