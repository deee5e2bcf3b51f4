#pragma once

#include "anomalab/target.hpp"

#include <map>

namespace anomalab {

// Element of H*_T(P^n)[[q]]((1/z)) in the monomial basis 1, H, ..., H^n.
// Coefficients are trusted for z exponents >= -depth only.
class HZ {
public:
    HZ(const Target& t, int order, int depth);

    int n() const { return n_; }
    int order() const { return order_; }
    int depth() const { return depth_; }

    // coefficient series of z^e H^k (zero if absent)
    QSeries get(int e, int k) const;
    QSeries& at(int e, int k);
    const std::map<int, std::vector<QSeries>>& terms() const { return terms_; }

    HZ mul_H() const;
    HZ mul_z() const;
    HZ mul_q() const;
    HZ D() const;
    // M = H + z D
    HZ apply_M() const;
    HZ operator*(const QSeries& s) const;
    HZ operator*(const Scalar& s) const;
    HZ& operator+=(const HZ& o);
    HZ& operator-=(const HZ& o);
    friend HZ operator+(HZ a, const HZ& b) { return a += b; }
    friend HZ operator-(HZ a, const HZ& b) { return a -= b; }

    // true if every trusted coefficient vanishes; otherwise the first bad (z exponent, q order)
    bool is_zero(int* bad_e = nullptr, int* bad_q = nullptr) const;
    // value at H = x as a map z exponent -> series
    std::map<int, QSeries> restrict_to(const Scalar& x) const;

private:
    int n_, order_, depth_;
    std::vector<Scalar> red_;  // H^(n+1) = sum_k red_[k] H^k
    std::map<int, std::vector<QSeries>> terms_;
    void trim();
};

// I-function at t = 0, expanded in 1/z to the given depth.
HZ ibar(const Target& t, int order, int depth);

// Coefficient of H^(j-k) z^-j in the expansion (the raw I_{jk} table, no normalizations).
QSeries i_coeff(const HZ& ibar, int j, int k);

// Applies the Picard-Fuchs operator prod_j (M - l_j) - (-1)^(n+1) q prod_r ((n+1) M + r z).
HZ pf_apply(const Target& t, const HZ& f);

struct PFReport {
    bool ok;
    int depth_checked;
    int bad_z_exponent = 0;
    int bad_q_order = -1;
};
PFReport pf_check(const Target& t, int order, int zdepth);

// Generic normalization S_{j+1} = (M S_j - sum_m c[j][m] S_m) / C[j+1] with S_0 = Ibar.
struct Birkhoff {
    std::vector<QSeries> C;               // C[0] = 1
    std::vector<std::vector<QSeries>> c;  // c[j][m], m <= j
    std::vector<HZ> S;
};
Birkhoff birkhoff(const Target& t, int order, int depth);

}  // namespace anomalab
