#pragma once

#include "anomalab/bilaurent.hpp"
#include "anomalab/generators.hpp"

namespace anomalab {

struct AsymptoticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// e^{mu/z} (R_0 + R_1 z + ...) at the fixed point i
struct AsymptoticExpansion {
    int i = 0;
    QSeries mu;
    std::vector<QSeries> R;
};

// Picard-Fuchs operator conjugated by e^{mu_i/z} and restricted to H = lambda_i,
// applied to sum_k f[k] z^k; returns coefficients of z^0 .. z^zmax.
std::vector<QSeries> conjugated_pf(const Target& t, const QSeries& Li, const std::vector<QSeries>& f, int zmax);

// Solves the z^(k+1) coefficient equations A D R_k + B R_k + G_k = 0 with R_k(0) = delta_k0.
AsymptoticExpansion solve_asymptotics(const GeometrySeries& g, int i, int K);

// first z-exponent at which the conjugated operator does not kill sum_{k<=K} R_k z^k, or -1
int asymptotic_residual(const GeometrySeries& g, const AsymptoticExpansion& a);

// Normalization data of S(H^{j+1}) = (M S(H^j) - sum_m c[j][m] S(H^m)) / C[j+1]
struct RowData {
    std::vector<QSeries> C;
    std::vector<std::vector<QSeries>> c;
};
RowData row_data(const GeometrySeries& g);
RowData row_data(const Birkhoff& b);

// S(H^j)|_{H=lambda_i} = e^{mu/z} P[j] sum_k R[j][k] z^k
struct SMatrix {
    int i = 0;
    QSeries mu;
    std::vector<QSeries> P;
    std::vector<std::vector<QSeries>> R;
};
// rows from the generic normalization recursion
SMatrix s_matrix(const GeometrySeries& g, const AsymptoticExpansion& a, const RowData& rows);
// rows from the target-specific recursions written with X, N2, E11, E21, E22, A2
SMatrix s_matrix_displayed(const GeometrySeries& g, const AsymptoticExpansion& a);

// coefficients of phi_r in 1, H, ..., H^n; phi^r = e_r phi_r
std::vector<Scalar> phi_coeffs(const Target& t, int r);

// stripped S_i(gamma) as z-coefficients, gamma given in the H-monomial basis
std::vector<QSeries> stripped_row(const SMatrix& S, const std::vector<Scalar>& gamma);

// W_ij(x,y) = sum_r [S_i(phi_r)](x) [S_j(phi^r)](y), stripped, exact for degrees <= K in each variable
BiLaurent pairing(const Target& t, const SMatrix& Si, const SMatrix& Sj);

struct UnitarityReport {
    bool ok = true;
    int bad_q_order = -1;
    int bad_degree = -1;
};
// W_ij(x, -x) = delta_ij e_i for x-degrees 0..K
UnitarityReport unitarity_check(const Target& t, const SMatrix& Si, const SMatrix& Sj);

// edge term (-1)^{b1+b2} [ (W_ij - delta_ij e_i e^{-mu_i(1/x+1/y)}) / (x+y) ]_{x^{b1-1} y^{b2-1}} for all b1+b2-2 < K
BiLaurent edge_kernel(const Target& t, const SMatrix& Si, const SMatrix& Sj);
QSeries edge_value(const BiLaurent& kernel, int b1, int b2);

// antidiagonal combinations of W_ii at total degree 2 and 4:
// c20 - c11 + c02 and c40 - c31 + c22 - c13 + c04
QSeries wdvv_degree(const BiLaurent& Wii, int degree);

// Treats N2 as unknown and solves the degree-2 antidiagonal identity of W_ii order by order.
QSeries recover_N2(const GeometrySeries& g, const AsymptoticExpansion& a);
// Kp3: treats E11 and E22 as unknown and solves the degree-2 and degree-4 identities jointly.
struct RecoveredE {
    QSeries E11, E22;
};
RecoveredE recover_E(const GeometrySeries& g, const AsymptoticExpansion& a);

// y = -x vanishing for every (i, j) at z-truncation K, then the recovered N2 (kp2) or E11, E22 (kp3)
// against their closed forms at every fixed point
std::vector<RelationResult> wdvv_suite(const GeometrySeries& g, int K);

}  // namespace anomalab
