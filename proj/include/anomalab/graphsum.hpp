#pragma once

#include "anomalab/asymptotics.hpp"
#include "anomalab/correlator.hpp"
#include "anomalab/graphs.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace anomalab {

// Everything the localization sum needs for one target at fixed weights.
class GraphSum {
public:
    // N: q-order, K: z-truncation of the asymptotic rows
    GraphSum(const Target& t, int N, int K);

    const Target& target() const { return g_.target; }
    const GeometrySeries& series() const { return g_; }
    int order() const { return N_; }
    int ztrunc() const { return K_; }
    const SMatrix& s_matrix(int i) const { return S_[i]; }

    // R_0^{-(2g-2+m)} <<psi^{a-1} | H_g^{p_i}>> at t_0 = t_1 = 0, t_j = (-1)^j R_{j-1}/R_0
    QSeries vertex(int g, int i, const std::vector<int>& A) const;
    // (-1)^{b1+b2} [ (W_ij - delta_ij e_i e^{-mu_i(1/x+1/y)}) / (x+y) ]_{x^{b1-1} y^{b2-1}}
    QSeries edge(int i, int j, int b1, int b2) const;
    // (-1)^{a-1} P_c R_{c, a-1} at p_i for the class H^c
    QSeries leg(int i, int cls, int a) const;
    // X-coefficient of an edge for Kp2: (-1)^{b1+b2} 3 L_i L_j R_{1,b1-1,i} R_{1,b2-1,j} / L^3
    QSeries edge_x_coefficient(int i, int j, int b1, int b2) const;

    // the largest A-value a flag at a vertex of genus g and valence m can carry
    static int a_bound(int g, int m) { return 3 * g - 2 + m; }

private:
    GeometrySeries g_;
    int N_, K_;
    std::vector<SMatrix> S_;
    std::vector<std::vector<QSeries>> tvals_;
    std::vector<QSeries> R0inv_;
    std::map<std::pair<int, int>, BiLaurent> kernels_;
    std::map<std::pair<int, int>, LambdaPoly> vclass_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, QSeries> vcache_;
};

// one entry per decorated graph
struct LedgerEntry {
    std::string graph;
    long aut = 1;
    int assignments = 0;  // A-assignments with a nonzero product
    QSeries value;
};
struct ContributionLedger {
    std::vector<LedgerEntry> entries;
    QSeries total;
};

// classes[k] in {1, 2}: marking k carries H or H^2
QSeries graph_contribution(const GraphSum& ctx, const StableGraph& G, const std::vector<int>& classes, int* assignments = nullptr);
QSeries assemble_F(const GraphSum& ctx, int g, const std::vector<int>& classes, ContributionLedger* ledger = nullptr);

// (q/C_1) d/dq, the T-derivative
QSeries d_dT(const GeometrySeries& g, const QSeries& f);

enum class HaeEquation { KP2, KP3First, KP3Second };

struct HaeReport {
    bool ok = false;
    int bad_order = -1;  // first q-order where lhs != rhs
    QSeries lhs, rhs;
};
// Structural left side: for every decorated graph, every A-assignment and every edge f,
// the edge factor of f is replaced by its generator-derivative image
//   KP2:       (L^3 / 3C_1^2) dCont(f)/dX       = (-1)^{k+l} L_i L_j R_{1,k-1,i} R_{1,l-1,j} / C_1^2
//   KP3First:  D_1 Cont(f)                      = (-1)^{k+l} (L_i^2 L_j R_2 R_1 + L_i L_j^2 R_1 R_2) / (C_1^2 C_2)
//   KP3Second: D_2 Cont(f)                      = (-1)^{k+l} 2 L_i L_j R_{1,k-1,i} R_{1,l-1,j} / C_1^2
// Right side from legged sums:
//   KP2:       1/2 sum_i <H>_{g-i,1} <H>_{i,1} + 1/2 <H,H>_{g-1,2}
//   KP3First:  sum_i <H>_{g-i,1} <H^2>_{i,1} + <H,H^2>_{g-1,2}
//   KP3Second: sum_i <H>_{g-i,1} <H>_{i,1} + <H,H>_{g-1,2}
HaeReport hae_check(const GraphSum& ctx, int g, HaeEquation eq);
QSeries hae_structural_lhs(const GraphSum& ctx, int g, HaeEquation eq);
QSeries hae_rhs(const GraphSum& ctx, int g, HaeEquation eq);

}  // namespace anomalab
