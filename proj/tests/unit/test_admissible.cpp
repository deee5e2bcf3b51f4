#include <doctest.h>

#include "anomalab/admissible.hpp"
#include "random_series.hpp"

using namespace anomalab;

namespace {

Scalar sc(long v) { return Scalar(v); }
Poly px() { return Poly::x(); }

Poly random_poly(std::mt19937& rng, int deg) {
    std::vector<Scalar> c;
    for (int k = 0; k <= deg; ++k) c.push_back(testsupport::random_rational(rng));
    c.back() += sc(10);  // keep the degree
    return Poly(c);
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    Poly a = Poly::linear(sc(1), sc(-1)) * Poly::linear(sc(1), sc(2));  // (x-1)(x+2)
    Poly b = Poly::linear(sc(1), sc(-1)) * Poly::linear(sc(2), sc(3));
    CHECK(gcd(a, b) == Poly::linear(sc(1), sc(-1)));
    std::mt19937 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        Poly p = random_poly(rng, 5), d = random_poly(rng, 2), q, r;
        divmod(p, d, q, r);
        CHECK(q * d + r == p);
        CHECK(r.degree() < d.degree());
        Scalar x = testsupport::random_rational(rng);
        CHECK((p * d).eval(x) == p.eval(x) * d.eval(x));
        CHECK(p.substitute_linear(sc(2), sc(-1)).eval(x) == p.eval(sc(2) * x - sc(1)));
    }
    CHECK((px() * px()).derivative() == Poly::linear(sc(2), sc(0)));
    CHECK(Poly::linear(sc(1), sc(1)).pow(3)[1] == sc(3));
}

TEST_CASE("rational functions stay reduced") {
    Poly l = Poly::linear(sc(1), sc(-1));
    RatFn f(l * Poly::linear(sc(1), sc(5)), l * l);
    CHECK(f.den() == l);
    CHECK(f.num() == Poly::linear(sc(1), sc(5)));
    CHECK(f.den().lead() == sc(1));
    RatFn g = RatFn(Poly(sc(1))) / RatFn(l);
    CHECK((g * RatFn(l)).is_poly());
    CHECK(g.derivative() == -(g * g));
    std::mt19937 rng(5);
    QSeries s = testsupport::random_series(rng, 6);
    s[0] = sc(3);
    CHECK(f.eval(s) * l.eval(s) == Poly::linear(sc(1), sc(5)).eval(s));
    CHECK(f.pow(-1) * f == RatFn(sc(1)));
}

TEST_CASE("differential operators") {
    DiffOp d{RatFn(), RatFn(sc(1))};  // d/dx
    DiffOp x{RatFn(px())};
    Poly p = Poly::linear(sc(1), sc(2)).pow(3);
    CHECK(op_apply(op_mul(d, x), RatFn(p)) == RatFn((px() * p).derivative()));
    CHECK(op_apply(op_add(d, x), RatFn(p)) == RatFn(p.derivative() + px() * p));
}

TEST_CASE("antiderivatives and ell expansions") {
    Poly l = Poly::linear(sc(2), sc(-3));
    bool log_term = false;
    RatFn inv2 = RatFn(Poly(sc(1)), l * l);
    RatFn F = antiderivative(inv2, &log_term);
    CHECK(!log_term);
    CHECK(F.derivative() == inv2);
    antiderivative(RatFn(Poly(sc(1)), l), &log_term);
    CHECK(log_term);
    RatFn mixed = RatFn(px() * px(), l.pow(3));
    auto e = ell_powers(mixed, l);
    RatFn back;
    for (const auto& [k, c] : e) back += RatFn(c) * RatFn(l).pow(k);
    CHECK(back == mixed);
    CHECK(e.begin()->first == -3);
    CHECK_THROWS(ell_powers(RatFn(Poly(sc(1)), px() * l), l));
}

TEST_CASE("Kp1 admissible system") {
    Target t = make_target(TargetKind::KP1, {sc(1), sc(3)});
    AdmissibleOperator op = build_admissible(t);
    CHECK(op.transcribed);
    OrderReport rep = order_check(op);
    CHECK(rep.ok);
    for (const auto& en : rep.entries)
        if (en.l == 0 && en.p == 0) CHECK(en.low <= -2);
    const Scalar &s1 = t.s[1], &s2 = t.s[2];
    GeometrySeries g = build_generators(t, 15);
    for (int i = 0; i <= 1; ++i) {
        AdmissibleSolution sol = solve_admissible(op, i, 6);
        CHECK(sol.obstruction_k == -1);
        CHECK(sol.Phi[0] == RatFn(sc(1)));
        for (size_t k = 1; k < sol.Phi.size(); ++k) CHECK(sol.Phi[k].eval(t.lambda[i]).is_zero());
        // Phi_1 from the closed form of R_1 / R_0
        const Scalar &li = t.lambda[i], &lj = t.lambda[1 - i];
        Poly num({sc(-16) * s1 * s1 * s2 * s2 + sc(88) * s2 * s2 * s2, sc(27) * s1 * s1 * s1 * s2 - sc(132) * s1 * s2 * s2,
                  sc(-12) * s1 * s1 * s1 * s1 + sc(54) * s1 * s1 * s2});
        Poly den = Poly::linear(s1, sc(-2) * s2).pow(3) * Poly(sc(24) * s1);
        Scalar c = (sc(12) * li * li - sc(9) * li * lj + lj * lj) / (sc(24) * (li * li * li - li * lj * lj));
        CHECK(sol.Phi[1] == RatFn(num, den) + RatFn(c));
        CHECK(cross_validate(sol, op, g, solve_asymptotics(g, i, 7)).ok);
    }
}

TEST_CASE("specialized Kp2 admissible system") {
    Target t = solve_constraint(TargetKind::KP2, {sc(1), sc(2)}).at(0);
    AdmissibleOperator op = build_admissible(t);
    CHECK(op.level == 2);
    CHECK(op.nonzero_entries() == 7);
    CHECK(op.transcribed);
    AdmissibleOperator der = derived_admissible(t);
    CHECK(der.A == op.A);
    CHECK(order_check(op).ok);
    GeometrySeries g = build_generators(t, 10);
    for (int i = 0; i <= 2; ++i) {
        AdmissibleSolution sol = solve_admissible(op, i, 4);
        CHECK(sol.obstruction_k == -1);
        AsymptoticExpansion a = solve_asymptotics(g, i, 5);
        CHECK(cross_validate(sol, op, g, a).ok);
        // a perturbed Phi is caught
        sol.Phi[2] += RatFn(op.ell) * RatFn(sc(1));
        CrossReport bad = cross_validate(sol, op, g, a);
        CHECK(!bad.ok);
        CHECK(bad.bad_k == 2);
    }
    CHECK_THROWS_AS(build_admissible(make_target(TargetKind::KP2, {sc(1), sc(2), sc(5)})), AdmissibleError);
}

TEST_CASE("degenerate Kp2 branch at the cube roots of unity") {
    Target t = roots_of_unity(TargetKind::KP2);
    AdmissibleOperator op = build_admissible(t);
    CHECK(op.degenerate);
    CHECK(!op.transcribed);
    CHECK(order_check(op).ok);
    GeometrySeries g = build_generators(t, 10);
    for (int i = 0; i <= 2; ++i) {
        AdmissibleSolution sol = solve_admissible(op, i, 4);
        CHECK(sol.obstruction_k == -1);
        for (const auto& phi : sol.Phi) CHECK(phi.is_poly());
        CHECK(cross_validate(sol, op, g, solve_asymptotics(g, i, 5)).ok);
    }
}
