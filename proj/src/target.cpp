#include "anomalab/target.hpp"

#include <functional>

namespace anomalab {

namespace {

std::vector<Scalar> elementary(const std::vector<Scalar>& w) {
    std::vector<Scalar> s(w.size() + 1);
    s[0] = Scalar(1);
    for (const auto& x : w)
        for (size_t k = w.size(); k >= 1; --k) s[k] += s[k - 1] * x;
    return s;
}

// roots of a t^2 + b t + c in the field of the coefficients, extended once if needed
std::vector<Scalar> quadratic_roots(const Scalar& a, const Scalar& b, const Scalar& c) {
    if (a.is_zero()) {
        if (b.is_zero()) return {};
        return {-c / b};
    }
    Scalar disc = b * b - Scalar(4) * a * c;
    if (disc.is_zero()) return {-b / (Scalar(2) * a)};
    if (!disc.is_rational()) throw ConfigError("constraint discriminant is not rational: " + disc.str());
    mpq_class sq;
    long d = squarefree_part(disc.a(), &sq);
    Scalar root = d == 1 ? Scalar(sq) : Scalar(mpq_class(0), sq, d);
    return {(-b + root) / (Scalar(2) * a), (-b - root) / (Scalar(2) * a)};
}

}  // namespace

std::string kind_name(TargetKind k) {
    switch (k) {
        case TargetKind::KP1: return "kp1";
        case TargetKind::KP2: return "kp2";
        case TargetKind::KP3: return "kp3";
        case TargetKind::Quintic: return "quintic";
    }
    return "?";
}

TargetKind parse_kind(const std::string& name) {
    for (auto k : {TargetKind::KP1, TargetKind::KP2, TargetKind::KP3, TargetKind::Quintic})
        if (kind_name(k) == name) return k;
    throw ConfigError("unknown target '" + name + "'");
}

int kind_dimension(TargetKind k) {
    switch (k) {
        case TargetKind::KP1: return 1;
        case TargetKind::KP2: return 2;
        case TargetKind::KP3: return 3;
        case TargetKind::Quintic: return 4;
    }
    return 0;
}

long Target::field() const {
    long d = 0;
    for (auto& x : lambda)
        if (!x.is_rational()) d = x.d();
    return d;
}

Scalar Target::e(int i) const {
    Scalar r = Scalar(-(n + 1)) * lambda[i];
    for (int j = 0; j <= n; ++j)
        if (j != i) r *= lambda[i] - lambda[j];
    return r;
}

Scalar Target::f(const Scalar& x) const {
    Scalar r;
    for (int k = 0; k <= n; ++k) {
        Scalar term = Scalar(k + 1) * s[k + 1] * x.pow(n - k);
        r += (k % 2 == 0) ? term : -term;
    }
    return r;
}

QSeries Target::f(const QSeries& x) const {
    QSeries r(x.order());
    for (int k = 0; k <= n; ++k) {
        QSeries term = x.ipow(n - k) * (Scalar(k + 1) * s[k + 1]);
        r += (k % 2 == 0) ? term : -term;
    }
    return r;
}

Scalar Target::kappa() const {
    if (kind == TargetKind::Quintic) return Scalar(3125);
    long p = 1;
    for (int k = 0; k <= n; ++k) p *= (n + 1);
    return Scalar((n % 2 == 0) ? -p : p);
}

std::string Target::name() const { return kind_name(kind); }

Target make_target(TargetKind kind, std::vector<Scalar> weights) {
    int n = kind_dimension(kind);
    if (static_cast<int>(weights.size()) != n + 1)
        throw ConfigError(kind_name(kind) + " needs " + std::to_string(n + 1) + " weights, got " + std::to_string(weights.size()));
    long d = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].is_zero()) throw ConfigError("weights must be nonzero");
        for (size_t j = 0; j < i; ++j)
            if (weights[i] == weights[j]) throw ConfigError("weights must be pairwise distinct");
        if (!weights[i].is_rational()) {
            if (d != 0 && d != weights[i].d()) throw FieldMismatch("weights live in different quadratic fields");
            d = weights[i].d();
        }
    }
    Target t{kind, n, std::move(weights), {}};
    t.s = elementary(t.lambda);
    return t;
}

std::vector<Scalar> constraint_residuals(const Target& t) {
    const auto& s = t.s;
    switch (t.kind) {
        case TargetKind::KP2: return {s[2] * s[2] - Scalar(3) * s[1] * s[3]};
        case TargetKind::KP3: return {Scalar(4) * s[2] * s[2] - s[1] * s[3], Scalar(2) * s[2].pow(3) - Scalar(27) * s[1] * s[1] * s[4]};
        case TargetKind::Quintic:
            return {Scalar(2) * s[1] * s[3] - s[2] * s[2], Scalar(8) * s[1] * s[1] * s[4] - s[2].pow(3), Scalar(80) * s[1].pow(3) * s[5] - s[2].pow(4)};
        case TargetKind::KP1: return {};
    }
    return {};
}

std::vector<Target> solve_constraint(TargetKind kind, const std::vector<Scalar>& fixed) {
    if (kind != TargetKind::KP2 && kind != TargetKind::KP3) throw ConfigError("no weight constraint is solved for " + kind_name(kind));
    int n = kind_dimension(kind);
    if (static_cast<int>(fixed.size()) != n) throw ConfigError("fix exactly " + std::to_string(n) + " weights");
    // the first constraint is quadratic in the free weight; interpolate it at t = 0, 1, -1
    auto first = [&](const Scalar& t) {
        std::vector<Scalar> w = fixed;
        w.push_back(t);
        auto s = elementary(w);
        return kind == TargetKind::KP2 ? s[2] * s[2] - Scalar(3) * s[1] * s[3] : Scalar(4) * s[2] * s[2] - s[1] * s[3];
    };
    Scalar p0 = first(Scalar(0)), p1 = first(Scalar(1)), m1 = first(Scalar(-1));
    Scalar a = (p1 + m1) / Scalar(2) - p0, b = (p1 - m1) / Scalar(2), c = p0;
    if (a.is_zero() && b.is_zero()) throw ConfigError("constraint does not determine the free weight");
    std::vector<Target> out;
    for (auto& t : quadratic_roots(a, b, c)) {
        std::vector<Scalar> w = fixed;
        w.push_back(t);
        Target cand;
        try {
            cand = make_target(kind, w);
        } catch (const ConfigError&) {
            continue;
        }
        bool ok = true;
        for (auto& r : constraint_residuals(cand)) ok = ok && r.is_zero();
        if (ok) out.push_back(cand);
    }
    if (out.empty()) throw ConfigError("no solution with distinct nonzero weights");
    return out;
}

Target roots_of_unity(TargetKind kind) {
    switch (kind) {
        case TargetKind::KP1: return make_target(kind, {Scalar(1), Scalar(-1)});
        case TargetKind::KP2: {
            Scalar w = (Scalar(-1) + Scalar::root_of(-3)) / Scalar(2);
            return make_target(kind, {Scalar(1), w, w * w});
        }
        case TargetKind::KP3: {
            Scalar i = Scalar::root_of(-1);
            return make_target(kind, {Scalar(1), i, Scalar(-1), -i});
        }
        case TargetKind::Quintic: break;
    }
    throw ConfigError("fifth roots of unity need a degree-4 field; use rational weights for the quintic");
}

std::vector<QSeries> defining_polynomial(const Target& t, int order) {
    std::vector<QSeries> c;
    for (int k = 0; k <= t.n + 1; ++k) {
        // coefficient of L^k in prod (L - lambda_j) is (-1)^(n+1-k) s_{n+1-k}
        int j = t.n + 1 - k;
        c.push_back(QSeries::constant(j % 2 == 0 ? t.s[j] : -t.s[j], order));
    }
    if (order >= 1) c[t.n + 1][1] -= t.kappa();
    return c;
}

}  // namespace anomalab
