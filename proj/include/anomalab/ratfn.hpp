#pragma once

#include "anomalab/scalar.hpp"
#include "anomalab/series.hpp"

#include <string>
#include <vector>

namespace anomalab {

// Univariate polynomial over Scalar, c[k] the coefficient of x^k, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(const Scalar& c);
    explicit Poly(std::vector<Scalar> c);
    static Poly x();
    // a x + b
    static Poly linear(const Scalar& a, const Scalar& b);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Scalar operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Scalar(); }
    const Scalar& lead() const { return c_.back(); }
    const std::vector<Scalar>& coeffs() const { return c_; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly pow(int e) const;
    Poly derivative() const;
    Poly monic() const;
    Scalar eval(const Scalar& x) const;
    QSeries eval(const QSeries& x) const;
    // p(a x + b)
    Poly substitute_linear(const Scalar& a, const Scalar& b) const;
    std::string str(const std::string& var = "x") const;

private:
    std::vector<Scalar> c_;
    void trim();
};

// a = q b + r with deg r < deg b
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly gcd(Poly a, Poly b);

// Reduced quotient num/den with den monic.
class RatFn {
public:
    RatFn() : den_(Scalar(1)) {}
    RatFn(const Scalar& c) : num_(c), den_(Scalar(1)) {}
    RatFn(const Poly& p) : num_(p), den_(Scalar(1)) {}
    RatFn(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }

    RatFn& operator+=(const RatFn& o);
    RatFn& operator-=(const RatFn& o);
    RatFn& operator*=(const RatFn& o);
    RatFn& operator/=(const RatFn& o);
    friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
    friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
    friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
    friend RatFn operator/(RatFn a, const RatFn& b) { return a /= b; }
    RatFn operator-() const { return RatFn(-num_, den_); }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFn pow(int e) const;
    RatFn derivative() const;
    Scalar eval(const Scalar& x) const;
    QSeries eval(const QSeries& x) const;
    std::string str() const;

private:
    Poly num_, den_;
    void reduce();
};

}  // namespace anomalab
