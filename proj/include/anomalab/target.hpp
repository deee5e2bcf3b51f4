#pragma once

#include "anomalab/series.hpp"

#include <string>
#include <vector>

namespace anomalab {

enum class TargetKind { KP1, KP2, KP3, Quintic };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Target {
    TargetKind kind;
    int n;                      // projective dimension
    std::vector<Scalar> lambda; // torus weights lambda_0..lambda_n
    std::vector<Scalar> s;      // s[0] = 1, s[k] elementary symmetric

    int points() const { return n + 1; }
    // common quadratic field tag of the weights (0 for Q)
    long field() const;
    // Euler class of the normal data at p_i: prod_{j != i}(l_i - l_j) * (-(n+1) l_i)
    Scalar e(int i) const;
    // f_n(x) = sum_k (-1)^k (k+1) s_{k+1} x^{n-k}
    Scalar f(const Scalar& x) const;
    QSeries f(const QSeries& x) const;
    // the factor (n+1)^(n+1) q sign in the defining polynomial: L^(n+1) (1 - kappa q)
    Scalar kappa() const;
    std::string name() const;
};

TargetKind parse_kind(const std::string& name);
std::string kind_name(TargetKind k);
int kind_dimension(TargetKind k);

Target make_target(TargetKind kind, std::vector<Scalar> weights);

// Fix all but the last weight and solve the specialization constraint for it.
// Kp2: s2^2 - 3 s1 s3 = 0.  Kp3: 4 s2^2 - s1 s3 = 0 and 2 s2^3 - 27 s1^2 s4 = 0.
// Returns every admissible solution.
std::vector<Target> solve_constraint(TargetKind kind, const std::vector<Scalar>& fixed);
// lambda_i = zeta^i with zeta a primitive (n+1)-th root of unity (n+1 = 2, 3, 4)
Target roots_of_unity(TargetKind kind);
// residuals of the specialization constraints (all zero when satisfied)
std::vector<Scalar> constraint_residuals(const Target& t);

// coefficients (in L) of prod_j (L - lambda_j) - kappa q L^(n+1)
std::vector<QSeries> defining_polynomial(const Target& t, int order);

}  // namespace anomalab
