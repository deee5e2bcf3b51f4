#pragma once

#include "anomalab/series.hpp"

#include <map>
#include <utility>
#include <vector>

namespace anomalab {

struct DivisionError : std::runtime_error {
    int q_order;
    DivisionError(int d, const std::string& what) : std::runtime_error(what), q_order(d) {}
};

// Per-q-order Laurent polynomials in x and y.
class BiLaurent {
public:
    using Slice = std::map<std::pair<int, int>, Scalar>;

    explicit BiLaurent(int order) : s_(order + 1) {}

    int order() const { return static_cast<int>(s_.size()) - 1; }
    const Slice& slice(int d) const { return s_[d]; }
    Slice& slice(int d) { return s_[d]; }

    void add(int d, int ex, int ey, const Scalar& v);
    Scalar coeff(int d, int ex, int ey) const;
    // q-series of the x^ex y^ey coefficient
    QSeries coeff_series(int ex, int ey) const;

    // A(x) B(y) for rows A = sum_k a_k z^k
    static BiLaurent outer(const std::vector<QSeries>& a, const std::vector<QSeries>& b, int order);
    // exp(c (1/x + 1/y)) for c = O(q)
    static BiLaurent exp_inverse_sum(const QSeries& c, int order);
    static BiLaurent constant(const Scalar& v, int order);

    BiLaurent& operator+=(const BiLaurent& o);
    BiLaurent& operator-=(const BiLaurent& o);
    friend BiLaurent operator*(const BiLaurent& a, const BiLaurent& b);
    BiLaurent operator*(const Scalar& s) const;

    BiLaurent mul_xy() const;
    // drop monomials of total degree above maxdeg
    BiLaurent truncate_total(int maxdeg) const;
    // exact quotient by (x + y); throws DivisionError naming the first bad order
    BiLaurent div_xy() const;
    // value of every slice on y = -x, as a Laurent polynomial in x per order
    std::vector<std::map<int, Scalar>> on_antidiagonal() const;

    bool operator==(const BiLaurent& o) const;

private:
    std::vector<Slice> s_;
    static void prune(Slice& s);
};

}  // namespace anomalab
