#include "anomalab/series.hpp"

#include <algorithm>

namespace anomalab {

QSeries::QSeries(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw SeriesError("series needs at least one coefficient");
}

QSeries QSeries::constant(const Scalar& v, int order) {
    QSeries r(order);
    r.c_[0] = v;
    return r;
}

QSeries QSeries::monomial(const Scalar& coeff, int k, int order) {
    QSeries r(order);
    if (k <= order) r.c_[k] = coeff;
    return r;
}

bool QSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
}

int QSeries::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return -1;
}

QSeries QSeries::truncate(int order) const {
    if (order > this->order()) throw SeriesError("cannot extend a truncated series");
    return QSeries(std::vector<Scalar>(c_.begin(), c_.begin() + order + 1));
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (o.order() < order()) c_.resize(o.c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
    if (o.order() < order()) c_.resize(o.c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    int va = a.valuation(), vb = b.valuation();
    QSeries r(n);
    if (va < 0 || vb < 0) return r;
    for (int i = va; i <= n - vb; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = vb; i + j <= n; ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

QSeries& QSeries::operator*=(const QSeries& o) { return *this = *this * o; }

QSeries& QSeries::operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

QSeries QSeries::operator-() const {
    QSeries r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

QSeries QSeries::operator+(const Scalar& s) const {
    QSeries r(*this);
    r.c_[0] += s;
    return r;
}

QSeries QSeries::operator-(const Scalar& s) const {
    QSeries r(*this);
    r.c_[0] -= s;
    return r;
}

bool operator==(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    for (int k = 0; k <= n; ++k)
        if (a.c_[k] != b.c_[k]) return false;
    return true;
}

QSeries QSeries::invert() const {
    if (c_[0].is_zero()) throw SeriesError("invert: zero constant term");
    int n = order();
    QSeries r(n);
    Scalar i0 = c_[0].inv();
    r.c_[0] = i0;
    for (int k = 1; k <= n; ++k) {
        Scalar acc;
        for (int j = 1; j <= k; ++j)
            if (!c_[j].is_zero()) acc += c_[j] * r.c_[k - j];
        r.c_[k] = -acc * i0;
    }
    return r;
}

QSeries QSeries::exp() const {
    if (!c_[0].is_zero()) throw SeriesError("exp: nonzero constant term");
    int n = order();
    QSeries r(n);
    r.c_[0] = Scalar(1);
    // D E = E D f
    for (int k = 1; k <= n; ++k) {
        Scalar acc;
        for (int j = 1; j <= k; ++j)
            if (!c_[j].is_zero()) acc += Scalar(j) * c_[j] * r.c_[k - j];
        r.c_[k] = acc / Scalar(k);
    }
    return r;
}

QSeries QSeries::log() const {
    if (!c_[0].is_one()) throw SeriesError("log: constant term must be 1");
    return (D() * invert()).Dinv();
}

QSeries QSeries::pow(const mpq_class& r) const {
    if (!c_[0].is_one()) throw SeriesError("pow: constant term must be 1");
    int n = order();
    QSeries p(n);
    p.c_[0] = Scalar(1);
    Scalar rs(r);
    // k P_k = sum_j (r j - (k - j)) a_j P_{k-j}
    for (int k = 1; k <= n; ++k) {
        Scalar acc;
        for (int j = 1; j <= k; ++j)
            if (!c_[j].is_zero()) acc += (rs * Scalar(j) - Scalar(k - j)) * c_[j] * p.c_[k - j];
        p.c_[k] = acc / Scalar(k);
    }
    return p;
}

QSeries QSeries::ipow(long e) const {
    if (e < 0) return invert().ipow(-e);
    QSeries r = constant(Scalar(1), order()), base(*this);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

QSeries QSeries::D() const {
    QSeries r(*this);
    for (int k = 0; k <= order(); ++k) r.c_[k] *= Scalar(k);
    return r;
}

QSeries QSeries::Dinv() const {
    if (!c_[0].is_zero()) throw SeriesError("Dinv: constant term would produce log(q)");
    QSeries r(*this);
    for (int k = 1; k <= order(); ++k) r.c_[k] /= Scalar(k);
    return r;
}

QSeries QSeries::shift(int k) const {
    QSeries r(order());
    for (int j = 0; j + k <= order(); ++j)
        if (j + k >= 0) r.c_[j + k] = c_[j];
    return r;
}

QSeries QSeries::compose(const QSeries& g) const {
    if (!g.c_[0].is_zero()) throw SeriesError("compose: inner series needs zero constant term");
    int n = std::min(order(), g.order());
    QSeries r(n), gp = constant(Scalar(1), n);
    QSeries gt = g.truncate(n);
    for (int k = 0; k <= n; ++k) {
        if (!c_[k].is_zero()) r += gp * c_[k];
        gp *= gt;
    }
    return r;
}

QSeries QSeries::reversion() const {
    if (!c_[0].is_zero() || c_[1].is_zero()) throw SeriesError("reversion needs g(0)=0, g'(0)!=0");
    int n = order();
    // Newton: h <- h - (g(h) - q)/g'(h)
    QSeries q = monomial(Scalar(1), 1, n);
    QSeries h = q * c_[1].inv();
    QSeries dg(n);
    for (int k = 1; k <= n; ++k) dg.c_[k - 1] = c_[k] * Scalar(k);
    for (int prec = 2; prec < 2 * (n + 1); prec *= 2) {
        QSeries err = compose(h) - q;
        h -= err * dg.compose(h).invert();
    }
    return h;
}

std::vector<std::string> QSeries::strings() const {
    std::vector<std::string> v;
    v.reserve(c_.size());
    for (auto& s : c_) v.push_back(s.str());
    return v;
}

QSeries QSeries::from_strings(const std::vector<std::string>& v) {
    std::vector<Scalar> c;
    for (auto& s : v) c.push_back(Scalar::parse(s));
    return QSeries(std::move(c));
}

QSeries LogSeries::D() const { return tail.D() + c; }

QSeries poly_eval(const std::vector<QSeries>& coeffs, const QSeries& x) {
    int n = x.order();
    for (auto& c : coeffs) n = std::min(n, c.order());
    QSeries r(n);
    for (size_t k = coeffs.size(); k-- > 0;) r = r * x + coeffs[k];
    return r;
}

QSeries newton_root(const std::vector<QSeries>& coeffs, const Scalar& seed, int order) {
    std::vector<QSeries> dc;
    for (size_t k = 1; k < coeffs.size(); ++k) dc.push_back(coeffs[k] * Scalar(static_cast<long>(k)));
    Scalar d0;
    for (size_t k = dc.size(); k-- > 0;) d0 = d0 * seed + dc[k][0];
    if (d0.is_zero()) throw SeriesError("newton_root: seed is a multiple root at q=0");
    Scalar p0;
    for (size_t k = coeffs.size(); k-- > 0;) p0 = p0 * seed + coeffs[k][0];
    if (!p0.is_zero()) throw SeriesError("newton_root: seed is not a root at q=0");
    QSeries x = QSeries::constant(seed, order);
    for (int prec = 1; prec <= order; prec *= 2) {
        x -= poly_eval(coeffs, x) * poly_eval(dc, x).invert();
    }
    return x;
}

}  // namespace anomalab
