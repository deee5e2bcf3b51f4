#include "anomalab/ratfn.hpp"

#include <sstream>

namespace anomalab {

Poly::Poly(const Scalar& c) : c_{c} { trim(); }

Poly::Poly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

Poly Poly::linear(const Scalar& a, const Scalar& b) { return Poly(std::vector<Scalar>{b, a}); }

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Poly Poly::pow(int e) const {
    Poly r(Scalar(1)), b = *this;
    for (; e > 0; e >>= 1, b = b * b)
        if (e & 1) r = r * b;
    return r;
}

Poly Poly::derivative() const {
    std::vector<Scalar> c;
    for (size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * Scalar(static_cast<long>(k)));
    return Poly(std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Scalar inv = lead().inv();
    for (auto& v : r.c_) v *= inv;
    return r;
}

Scalar Poly::eval(const Scalar& x) const {
    Scalar r;
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
}

QSeries Poly::eval(const QSeries& x) const {
    QSeries r(x.order());
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
}

Poly Poly::substitute_linear(const Scalar& a, const Scalar& b) const {
    Poly r, lin = linear(a, b);
    for (size_t k = c_.size(); k-- > 0;) r = r * lin + Poly(c_[k]);
    return r;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[k].str() << ")";
        if (k > 0) os << "*" << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Scalar> qc(std::max(a.degree() - b.degree() + 1, 0));
    r = a;
    Scalar inv = b.lead().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int s = r.degree() - b.degree();
        Scalar c = r.lead() * inv;
        qc[s] = c;
        std::vector<Scalar> m(s + 1);
        m[s] = c;
        r -= Poly(std::move(m)) * b;
    }
    q = Poly(std::move(qc));
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

RatFn::RatFn(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    reduce();
}

void RatFn::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(Scalar(1));
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        Poly q, r;
        divmod(num_, g, q, r);
        num_ = q;
        divmod(den_, g, q, r);
        den_ = q;
    }
    Scalar inv = den_.lead().inv();
    num_ = num_ * Poly(inv);
    den_ = den_ * Poly(inv);
}

RatFn& RatFn::operator+=(const RatFn& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    reduce();
    return *this;
}

RatFn& RatFn::operator-=(const RatFn& o) { return *this += -o; }

RatFn& RatFn::operator*=(const RatFn& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RatFn& RatFn::operator/=(const RatFn& o) {
    if (o.is_zero()) throw std::domain_error("rational function division by zero");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    reduce();
    return *this;
}

RatFn RatFn::pow(int e) const {
    if (e < 0) return RatFn(den_, num_).pow(-e);
    return RatFn(num_.pow(e), den_.pow(e));
}

RatFn RatFn::derivative() const { return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_); }

Scalar RatFn::eval(const Scalar& x) const {
    Scalar d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole");
    return num_.eval(x) / d;
}

QSeries RatFn::eval(const QSeries& x) const { return num_.eval(x) * den_.eval(x).invert(); }

std::string RatFn::str() const {
    if (is_poly()) return num_.str();
    return "[" + num_.str() + "] / [" + den_.str() + "]";
}

}  // namespace anomalab
