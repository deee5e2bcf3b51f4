#include "anomalab/scalar.hpp"

#include <cmath>
#include <sstream>

namespace anomalab {

Scalar::Scalar(const mpq_class& a, const mpq_class& b, long d) : a_(a), b_(b), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (sgn(b_) != 0 && (d_ == 0 || d_ == 1))
        throw std::invalid_argument("quadratic part needs a square-free d other than 0, 1");
    if (d_ == 1) d_ = 0;
}

Scalar Scalar::frac(long p, long q) {
    mpq_class v(p, q);
    v.canonicalize();
    return Scalar(v);
}

Scalar Scalar::root_of(long d) {
    if (d == 1) return Scalar(1);
    return Scalar(mpq_class(0), mpq_class(1), d);
}

long Scalar::merge(const Scalar& o) const {
    if (d_ == 0) return o.d_;
    if (o.d_ == 0 || o.d_ == d_) return d_;
    if (o.is_rational()) return d_;
    if (is_rational()) return o.d_;
    throw FieldMismatch("mixed quadratic extensions sqrt(" + std::to_string(d_) + ") and sqrt(" + std::to_string(o.d_) + ")");
}

Scalar& Scalar::operator+=(const Scalar& o) {
    d_ = merge(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    d_ = merge(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    long d = merge(o);
    if (is_rational() && o.is_rational()) {
        a_ *= o.a_;
    } else if (o.is_rational()) {
        a_ *= o.a_;
        b_ *= o.a_;
    } else if (is_rational()) {
        b_ = a_ * o.b_;
        a_ *= o.a_;
    } else {
        mpq_class na = a_ * o.a_ + d * (b_ * o.b_);
        mpq_class nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
    }
    d_ = d;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_rational()) {
        if (sgn(o.a_) == 0) throw std::domain_error("division by zero scalar");
        d_ = merge(o);
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    return *this *= o.inv();
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

mpq_class Scalar::norm() const { return a_ * a_ - d_ * (b_ * b_); }

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    if (is_rational()) {
        Scalar r;
        r.a_ = 1 / a_;
        r.d_ = d_;
        return r;
    }
    mpq_class n = norm();
    Scalar r;
    r.a_ = a_ / n;
    r.b_ = -b_ / n;
    r.d_ = d_;
    return r;
}

Scalar Scalar::conj() const {
    Scalar r(*this);
    r.b_ = -r.b_;
    return r;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar r(1), base(*this);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string Scalar::str() const {
    if (is_rational()) return a_.get_str();
    std::string s = a_.get_str();
    std::string bs = b_.get_str();
    if (bs[0] != '-') s += "+";
    return s + bs + "*sqrt(" + std::to_string(d_) + ")";
}

Scalar Scalar::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto pos = t.find("*sqrt(");
    if (pos == std::string::npos) {
        mpq_class v(t);
        v.canonicalize();
        return Scalar(v);
    }
    // split a and b at the last sign before the sqrt factor
    size_t split = t.find_last_of("+-", pos - 1);
    while (split > 0 && (t[split - 1] == 'e' || t[split - 1] == '/')) split = t.find_last_of("+-", split - 1);
    if (split == std::string::npos || split == 0) throw std::invalid_argument("bad quadratic scalar: " + text);
    std::string as = t.substr(0, split);
    std::string bs = t.substr(split, pos - split);
    if (bs[0] == '+') bs = bs.substr(1);
    std::string ds = t.substr(pos + 6, t.size() - pos - 7);
    mpq_class a(as), b(bs);
    a.canonicalize();
    b.canonicalize();
    return Scalar(a, b, std::stol(ds));
}

double Scalar::approx() const {
    if (!is_rational()) throw std::domain_error("approx of a non-rational scalar");
    return a_.get_d();
}

std::string Scalar::decimal(int digits) const {
    auto fmt = [digits](const mpq_class& q) {
        mpf_class f(q, static_cast<mp_bitcnt_t>(digits * 3.33 + 16));
        mp_exp_t ex;
        std::string m = f.get_str(ex, 10, digits);
        if (m.empty()) return std::string("0");
        bool neg = m[0] == '-';
        if (neg) m = m.substr(1);
        std::ostringstream os;
        os << (neg ? "-" : "") << "0." << m << "e" << ex;
        return os.str();
    };
    if (is_rational()) return fmt(a_);
    return fmt(a_) + "+" + fmt(b_) + "*sqrt(" + std::to_string(d_) + ")";
}

long squarefree_part(const mpq_class& r, mpq_class* s) {
    if (sgn(r) == 0) throw std::domain_error("square-free part of zero");
    // r = n/m = (n*m)/m^2
    mpz_class n = r.get_num() * r.get_den();
    long sign = sgn(n) < 0 ? -1 : 1;
    n = abs(n);
    mpz_class sq = 1, rest = 1;
    mpz_class p = 2;
    while (p * p <= n) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) sq *= p;
        if (e % 2) rest *= p;
        p += (p == 2) ? 1 : 2;
    }
    rest *= n;
    if (!rest.fits_slong_p()) throw std::overflow_error("square-free part too large");
    if (s) {
        *s = mpq_class(sq, r.get_den());
        s->canonicalize();
    }
    return sign * rest.get_si();
}

}  // namespace anomalab
