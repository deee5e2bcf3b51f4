#pragma once

#include "anomalab/scalar.hpp"

#include <vector>

namespace anomalab {

// Power series in q truncated after q^N. All arithmetic is exact and never
// reads past the smaller operand order.
class QSeries {
public:
    QSeries() : c_(1) {}
    explicit QSeries(int order) : c_(order + 1) {}
    QSeries(std::vector<Scalar> coeffs);

    static QSeries constant(const Scalar& v, int order);
    // coeff * q^k
    static QSeries monomial(const Scalar& coeff, int k, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Scalar& operator[](int k) const { return c_[k]; }
    Scalar& operator[](int k) { return c_[k]; }
    const std::vector<Scalar>& coeffs() const { return c_; }

    bool is_zero() const;
    // first nonzero index, or -1
    int valuation() const;
    QSeries truncate(int order) const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const QSeries& o);
    QSeries& operator*=(const Scalar& s);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(QSeries a, const Scalar& s) { return a *= s; }
    friend QSeries operator*(const Scalar& s, QSeries a) { return a *= s; }
    friend QSeries operator/(const QSeries& a, const QSeries& b) { return a * b.invert(); }
    friend QSeries operator/(QSeries a, const Scalar& s) { return a *= s.inv(); }
    QSeries operator-() const;
    QSeries operator+(const Scalar& s) const;
    QSeries operator-(const Scalar& s) const;

    friend bool operator==(const QSeries& a, const QSeries& b);

    QSeries invert() const;
    QSeries exp() const;
    QSeries log() const;
    // a^r for rational r, requires a(0) = 1
    QSeries pow(const mpq_class& r) const;
    // a^(1/m); m may be negative
    QSeries root(long m) const { return pow(mpq_class(1, 1) / m); }
    QSeries ipow(long e) const;

    // D = q d/dq
    QSeries D() const;
    // inverse of D on series with zero constant term, result has zero constant term
    QSeries Dinv() const;
    // multiply by q^k, keeping the order
    QSeries shift(int k) const;
    // f(g) with g(0) = 0
    QSeries compose(const QSeries& g) const;
    // compositional inverse of g with g(0)=0, g'(0) != 0
    QSeries reversion() const;

    std::vector<std::string> strings() const;
    static QSeries from_strings(const std::vector<std::string>& v);

private:
    std::vector<Scalar> c_;
};

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// c log(q) + tail
struct LogSeries {
    Scalar c;
    QSeries tail;
    QSeries D() const;
};

// Root of P(x) = sum_k coeffs[k] x^k with x(0) = seed, by q-adic Newton iteration.
QSeries newton_root(const std::vector<QSeries>& coeffs, const Scalar& seed, int order);

// evaluate sum_k coeffs[k] x^k
QSeries poly_eval(const std::vector<QSeries>& coeffs, const QSeries& x);

}  // namespace anomalab
