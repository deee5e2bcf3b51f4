#include "anomalab/bilaurent.hpp"

#include <algorithm>

namespace anomalab {

void BiLaurent::prune(Slice& s) {
    for (auto it = s.begin(); it != s.end();) {
        if (it->second.is_zero())
            it = s.erase(it);
        else
            ++it;
    }
}

void BiLaurent::add(int d, int ex, int ey, const Scalar& v) {
    if (v.is_zero()) return;
    s_[d][{ex, ey}] += v;
}

Scalar BiLaurent::coeff(int d, int ex, int ey) const {
    auto it = s_[d].find({ex, ey});
    return it == s_[d].end() ? Scalar(0) : it->second;
}

QSeries BiLaurent::coeff_series(int ex, int ey) const {
    QSeries r(order());
    for (int d = 0; d <= order(); ++d) r[d] = coeff(d, ex, ey);
    return r;
}

BiLaurent BiLaurent::outer(const std::vector<QSeries>& a, const std::vector<QSeries>& b, int order) {
    BiLaurent r(order);
    for (size_t k = 0; k < a.size(); ++k)
        for (size_t l = 0; l < b.size(); ++l) {
            QSeries p = a[k] * b[l];
            for (int d = 0; d <= order; ++d) r.add(d, static_cast<int>(k), static_cast<int>(l), p[d]);
        }
    return r;
}

BiLaurent BiLaurent::constant(const Scalar& v, int order) {
    BiLaurent r(order);
    r.add(0, 0, 0, v);
    return r;
}

BiLaurent BiLaurent::exp_inverse_sum(const QSeries& c, int order) {
    if (!c[0].is_zero()) throw SeriesError("exp_inverse_sum needs c(0) = 0");
    // sum_m c^m (1/x + 1/y)^m / m!
    BiLaurent r = constant(Scalar(1), order);
    QSeries cm = QSeries::constant(Scalar(1), order);
    Scalar fact(1);
    for (int m = 1; m <= order; ++m) {
        cm = cm * c;
        fact *= Scalar(m);
        mpz_class binom = 1;
        for (int j = 0; j <= m; ++j) {
            Scalar w = Scalar(mpq_class(binom)) / fact;
            for (int d = m; d <= order; ++d) r.add(d, -j, -(m - j), cm[d] * w);
            binom = binom * (m - j) / (j + 1);
        }
    }
    for (auto& s : r.s_) prune(s);
    return r;
}

BiLaurent& BiLaurent::operator+=(const BiLaurent& o) {
    if (o.order() < order()) s_.resize(o.s_.size());
    for (int d = 0; d <= order(); ++d) {
        for (auto& [k, v] : o.s_[d]) s_[d][k] += v;
        prune(s_[d]);
    }
    return *this;
}

BiLaurent& BiLaurent::operator-=(const BiLaurent& o) {
    if (o.order() < order()) s_.resize(o.s_.size());
    for (int d = 0; d <= order(); ++d) {
        for (auto& [k, v] : o.s_[d]) s_[d][k] -= v;
        prune(s_[d]);
    }
    return *this;
}

BiLaurent operator*(const BiLaurent& a, const BiLaurent& b) {
    int n = std::min(a.order(), b.order());
    BiLaurent r(n);
    for (int d1 = 0; d1 <= n; ++d1)
        for (int d2 = 0; d1 + d2 <= n; ++d2)
            for (auto& [k1, v1] : a.s_[d1])
                for (auto& [k2, v2] : b.s_[d2]) r.s_[d1 + d2][{k1.first + k2.first, k1.second + k2.second}] += v1 * v2;
    for (auto& s : r.s_) BiLaurent::prune(s);
    return r;
}

BiLaurent BiLaurent::operator*(const Scalar& s) const {
    BiLaurent r(*this);
    for (auto& sl : r.s_) {
        for (auto& [k, v] : sl) v *= s;
        prune(sl);
    }
    return r;
}

BiLaurent BiLaurent::mul_xy() const {
    BiLaurent r(order());
    for (int d = 0; d <= order(); ++d) {
        for (auto& [k, v] : s_[d]) {
            r.s_[d][{k.first + 1, k.second}] += v;
            r.s_[d][{k.first, k.second + 1}] += v;
        }
        prune(r.s_[d]);
    }
    return r;
}

BiLaurent BiLaurent::truncate_total(int maxdeg) const {
    BiLaurent r(*this);
    for (auto& sl : r.s_)
        for (auto it = sl.begin(); it != sl.end();) {
            if (it->first.first + it->first.second > maxdeg)
                it = sl.erase(it);
            else
                ++it;
        }
    return r;
}

BiLaurent BiLaurent::div_xy() const {
    BiLaurent r(order());
    for (int d = 0; d <= order(); ++d) {
        // group by total degree t; within a group write x^t p(u), u = y/x
        std::map<int, std::map<int, Scalar>> groups;
        for (auto& [k, v] : s_[d]) groups[k.first + k.second][k.second] = v;
        for (auto& [t, poly] : groups) {
            int jlo = poly.begin()->first, jhi = poly.rbegin()->first;
            // synthetic division of sum_j c_j u^j by (1 + u), from the top
            Scalar carry;
            for (int j = jhi; j >= jlo; --j) {
                auto it = poly.find(j);
                Scalar cj = it == poly.end() ? Scalar(0) : it->second;
                Scalar rem = cj - carry;
                if (j == jlo) {
                    if (!rem.is_zero())
                        throw DivisionError(d, "slice at q^" + std::to_string(d) + " does not vanish on y = -x (total degree " + std::to_string(t) + ")");
                    break;
                }
                // quotient coefficient of u^(j-1)
                if (!rem.is_zero()) r.s_[d][{(t - 1) - (j - 1), j - 1}] += rem;
                carry = rem;
            }
        }
        prune(r.s_[d]);
    }
    return r;
}

std::vector<std::map<int, Scalar>> BiLaurent::on_antidiagonal() const {
    std::vector<std::map<int, Scalar>> out(s_.size());
    for (int d = 0; d <= order(); ++d) {
        for (auto& [k, v] : s_[d]) {
            Scalar w = (k.second % 2 == 0) ? v : -v;
            out[d][k.first + k.second] += w;
        }
        for (auto it = out[d].begin(); it != out[d].end();) {
            if (it->second.is_zero())
                it = out[d].erase(it);
            else
                ++it;
        }
    }
    return out;
}

bool BiLaurent::operator==(const BiLaurent& o) const {
    int n = std::min(order(), o.order());
    for (int d = 0; d <= n; ++d) {
        Slice a = s_[d], b = o.s_[d];
        prune(a);
        prune(b);
        if (a.size() != b.size()) return false;
        for (auto& [k, v] : a) {
            auto it = b.find(k);
            if (it == b.end() || it->second != v) return false;
        }
    }
    return true;
}

}  // namespace anomalab
