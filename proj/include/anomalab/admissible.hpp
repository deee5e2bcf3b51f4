#pragma once

#include "anomalab/asymptotics.hpp"
#include "anomalab/ratfn.hpp"

#include <map>
#include <string>
#include <vector>

namespace anomalab {

struct AdmissibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sum_k c[k] (d/dx)^k with rational coefficients
using DiffOp = std::vector<RatFn>;

DiffOp op_mul(const DiffOp& a, const DiffOp& b);
DiffOp op_add(const DiffOp& a, const DiffOp& b);
RatFn op_apply(const DiffOp& a, const RatFn& f);

// Level-n system d/dx Phi_p = sum_{l,p'} A[l][p'] (d/dx)^{p'} Phi_{p-1-l} in the variable x = L_i,
// with R_{k,i} = f(L_i)^{-1/2} Phi_k up to the constant normalization.
struct AdmissibleOperator {
    Target target;
    int level = 1;
    // f = f_scale * ell^f_power; ell has degree 1 unless degenerate (f constant)
    Poly f, ell;
    Scalar f_scale;
    int f_power = 1;
    bool degenerate = false;
    bool transcribed = false;
    std::map<std::pair<int, int>, RatFn> A;

    int nonzero_entries() const;
};

// the coefficient tables as printed, evaluated at the target's weights
AdmissibleOperator transcribed_admissible(const Target& t);
// the same system obtained by expanding the Picard-Fuchs operator in z with D = (DL) d/dL
AdmissibleOperator derived_admissible(const Target& t);
// transcribed tables for Kp1 and the specialized Kp2, the derived system on the degenerate branch
AdmissibleOperator build_admissible(const Target& t);

// expansion in powers of ell: exponent -> coefficient; throws unless the denominator is a power of ell
std::map<int, Scalar> ell_powers(const RatFn& a, const Poly& ell);

struct OrderEntry {
    int l = 0, p = 0;
    int low = 0, high = 0;  // smallest and largest ell-exponent
    int bound = 0;
    bool ok = true;
};
struct OrderReport {
    bool ok = true;
    bool degenerate = false;
    std::vector<OrderEntry> entries;
};
// Ord(A_l0) <= -2, Ord(A_l1) <= 0, Ord(A_lp) <= p + 1, Ord the smallest ell-exponent
OrderReport order_check(const AdmissibleOperator& op);

struct AdmissibleSolution {
    int i = 0;
    std::vector<RatFn> Phi;
    int obstruction_k = -1;  // first k whose antiderivative needs a logarithm
    std::string obstruction;
};
// Phi_0 = 1, Phi_k(lambda_i) = 0 for k >= 1
AdmissibleSolution solve_admissible(const AdmissibleOperator& op, int i, int K);
// antiderivative of a rational function whose denominator is a power of one linear factor
RatFn antiderivative(const RatFn& a, bool* log_term);

struct CrossReport {
    bool ok = true;
    int bad_k = -1;
    int bad_order = -1;
};
// (f(lambda_i) / f(L_i))^{1/2} Phi_k(L_i) against the Picard-Fuchs R_{k,i} to order N
CrossReport cross_validate(const AdmissibleSolution& sol, const AdmissibleOperator& op, const GeometrySeries& g,
                           const AsymptoticExpansion& a);

}  // namespace anomalab
