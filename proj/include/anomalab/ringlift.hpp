#pragma once

#include "anomalab/generators.hpp"

#include <map>
#include <string>
#include <vector>

namespace anomalab {

// One generator series with its exponent range lo, lo + step, ..., hi.
struct Generator {
    std::string name;
    QSeries value;
    int lo = 0, hi = 0, step = 1;
};

struct GeneratorBasis {
    std::vector<Generator> gens;

    int order() const;
    std::vector<std::vector<int>> monomials() const;
    QSeries monomial_value(const std::vector<int>& e) const;
    int index(const std::string& name) const;
};

struct GeneratorSpec {
    std::string name;
    int lo = 0, hi = 0, step = 1;
};
// Names: any generator series of g ("L", "A2", "C1", ...), "L<i>" for L_i, and "g<i>" for the
// normalized root (f(lambda_i) / f(L_i))^{1/2}, whose constant term is 1.
GeneratorBasis make_basis(const GeometrySeries& g, const std::vector<GeneratorSpec>& specs);
// G_2 at lambda_i = zeta^i: L_i = zeta^i L and f_2 is constant, so L and A2 are the only generators
GeneratorBasis kp2_zeta_basis(const GeometrySeries& g, int lo, int hi, int l_step, int a2_max);

struct RingExpression {
    std::vector<std::string> names;
    std::map<std::vector<int>, Scalar> terms;

    QSeries evaluate(const GeneratorBasis& b) const;
    // largest exponent of the named generator among nonzero terms, -1 for the zero expression
    int degree_in(const std::string& name) const;
    // formal partial derivative in the named generator
    RingExpression derivative(const std::string& name) const;
    std::string str() const;
};

enum class FitStatus { Fitted, NotInRing, RankDeficient };
std::string fit_status_name(FitStatus s);

struct FitResult {
    FitStatus status = FitStatus::Fitted;
    RingExpression expr;
    int unknowns = 0;
    int solve_orders = 0;   // q-orders 0 .. solve_orders-1 determine the coefficients
    int margin = 0;         // further orders only checked
    int first_bad_order = -1;
    RingExpression kernel;  // nonzero combination of basis monomials vanishing on the solve orders
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact solve on orders 0 .. order-margin, verification on the last `margin` orders.
FitResult fit_series(const QSeries& F, const GeneratorBasis& b, int margin = 6);

struct LiftReport {
    FitResult fit;
    int a2_degree = -1;
    int bound = 0;
    bool within_bound = false;
};
// fit in G[A2]; bound 3g-3 for kp2 and 2(3g-3) for kp3
LiftReport lift_in_A2(const QSeries& F, int g, TargetKind kind, const GeneratorBasis& b, int margin = 6);

// linear system over Scalar: rows x = rhs; returns false when inconsistent
struct LinearSolve {
    bool consistent = true;
    int rank = 0;
    std::vector<Scalar> x;
    std::vector<Scalar> kernel;  // empty when full column rank
};
LinearSolve solve_linear(std::vector<std::vector<Scalar>> rows, std::vector<Scalar> rhs);

}  // namespace anomalab
