#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace anomalab {

struct FieldMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element a + b*sqrt(d) of Q or of a single quadratic extension Q(sqrt d).
// d == 0 marks a plain rational that can combine with any field.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    // canonicalizes, so unreduced inputs such as mpq_class(4, 2) are safe
    Scalar(const mpq_class& v) : a_(v) { a_.canonicalize(); }
    Scalar(const mpq_class& a, const mpq_class& b, long d);

    static Scalar frac(long p, long q);
    // sqrt(d) for square-free d
    static Scalar root_of(long d);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long d() const { return d_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const { return a_ == 1 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_ && (x.is_rational() || x.d_ == y.d_); }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar inv() const;
    Scalar conj() const;
    // a^2 - d b^2
    mpq_class norm() const;
    Scalar pow(long e) const;

    // "p/q" or "a+b*sqrt(d)"
    std::string str() const;
    static Scalar parse(const std::string& s);
    double approx() const;
    // decimal string with the given significant digits, via GMP floats
    std::string decimal(int digits) const;

private:
    mpq_class a_{0};
    mpq_class b_{0};
    long d_ = 0;

    long merge(const Scalar& o) const;
};

// Square-free part of a nonzero rational r: r = s^2 * d.
long squarefree_part(const mpq_class& r, mpq_class* s = nullptr);

}  // namespace anomalab
