#include <doctest.h>

#include "anomalab/ringlift.hpp"
#include "random_series.hpp"

using namespace anomalab;

namespace {

Scalar sc(long v) { return Scalar(v); }

GeometrySeries kp2_series(int N) { return build_generators(make_target(TargetKind::KP2, {sc(1), sc(2), sc(5)}), N); }

}  // namespace

TEST_CASE("X lies in the generator ring") {
    GeometrySeries g = kp2_series(14);
    GeneratorBasis b = make_basis(g, {{"L", 0, 3, 3}, {"A2", 0, 1, 1}});
    FitResult fit = fit_series(g["X"], b);
    REQUIRE(fit.status == FitStatus::Fitted);
    CHECK(fit.first_bad_order == -1);
    CHECK(fit.unknowns == 4);
    // X = (L^3 A2 - 1 + L^3 / 2) / 3
    RingExpression want;
    want.names = {"L", "A2"};
    want.terms = {{{0, 0}, Scalar::frac(-1, 3)}, {{3, 0}, Scalar::frac(1, 6)}, {{3, 1}, Scalar::frac(1, 3)}};
    CHECK(fit.expr.terms == want.terms);
    CHECK(fit.expr.evaluate(b) == g["X"]);
}

TEST_CASE("trivial fits") {
    GeometrySeries g = kp2_series(10);
    GeneratorBasis b = make_basis(g, {{"L", 0, 3, 3}, {"A2", 0, 1, 1}});
    FitResult zero = fit_series(QSeries(10), b);
    CHECK(zero.status == FitStatus::Fitted);
    CHECK(zero.expr.terms.empty());
    LiftReport c = lift_in_A2(QSeries::constant(Scalar::frac(2, 7), 10), 2, TargetKind::KP2, b, 6);
    CHECK(c.fit.status == FitStatus::Fitted);
    CHECK(c.a2_degree == 0);
    CHECK(c.within_bound);
    CHECK_THROWS_AS(fit_series(g["X"], make_basis(g, {{"L", -6, 6, 1}, {"A2", 0, 3, 1}})), FitError);
}

TEST_CASE("series outside the ring are rejected with evidence") {
    GeometrySeries g = kp2_series(12);
    GeneratorBasis b = make_basis(g, {{"L", 0, 3, 3}, {"A2", 0, 1, 1}});
    FitResult fit = fit_series(g.Li[0], b);
    CHECK(fit.status == FitStatus::NotInRing);
}

TEST_CASE("dependent generators report a kernel") {
    // C1^2 C2 (1 + 27q) = 1 makes C1^2 C2 L^-3 and 1 linearly dependent
    GeometrySeries g = kp2_series(16);
    GeneratorBasis b = make_basis(g, {{"C1", 0, 2, 2}, {"C2", 0, 1, 1}, {"L", -3, 0, 3}});
    FitResult fit = fit_series(g["C1"], b);
    REQUIRE(fit.status == FitStatus::RankDeficient);
    CHECK(!fit.kernel.terms.empty());
    CHECK(fit.kernel.evaluate(b).is_zero());
}

TEST_CASE("random ring elements round trip") {
    GeometrySeries g = kp2_series(24);
    GeneratorBasis b = make_basis(g, {{"L", -3, 3, 3}, {"A2", 0, 2, 1}, {"g0", 0, 1, 1}});
    std::mt19937 rng(7);
    for (int rep = 0; rep < 3; ++rep) {
        RingExpression e;
        e.names = {"L", "A2", "g0"};
        for (const auto& m : b.monomials()) e.terms[m] = testsupport::random_rational(rng);
        FitResult fit = fit_series(e.evaluate(b), b);
        REQUIRE(fit.status == FitStatus::Fitted);
        for (const auto& [m, c] : e.terms) {
            Scalar have = fit.expr.terms.count(m) ? fit.expr.terms.at(m) : sc(0);
            CHECK(have == c);
        }
        CHECK(fit.expr.degree_in("A2") == 2);
    }
}

TEST_CASE("expression derivatives") {
    RingExpression e;
    e.names = {"L", "A2"};
    e.terms = {{{3, 2}, sc(5)}, {{0, 1}, sc(2)}, {{6, 0}, sc(1)}};
    RingExpression d = e.derivative("A2");
    CHECK(d.terms.size() == 2);
    CHECK(d.terms.at({3, 1}) == sc(10));
    CHECK(d.terms.at({0, 0}) == sc(2));
    CHECK(e.degree_in("A2") == 2);
    CHECK(e.derivative("C1").terms.empty());
}

TEST_CASE("exact linear solver") {
    std::vector<std::vector<Scalar>> rows{{sc(1), sc(2)}, {sc(3), sc(4)}, {sc(5), sc(6)}};
    LinearSolve ls = solve_linear(rows, {sc(5), sc(11), sc(17)});
    CHECK(ls.consistent);
    CHECK(ls.rank == 2);
    CHECK(ls.x == std::vector<Scalar>{sc(1), sc(2)});
    CHECK(!solve_linear(rows, {sc(5), sc(11), sc(18)}).consistent);
    LinearSolve k = solve_linear({{sc(1), sc(2)}, {sc(2), sc(4)}}, {sc(1), sc(2)});
    CHECK(k.rank == 1);
    REQUIRE(k.kernel.size() == 2);
    CHECK((k.kernel[0] + sc(2) * k.kernel[1]).is_zero());
}
