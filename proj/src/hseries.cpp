#include "anomalab/hseries.hpp"

namespace anomalab {

HZ::HZ(const Target& t, int order, int depth) : n_(t.n), order_(order), depth_(depth), red_(t.n + 1) {
    for (int k = 1; k <= n_ + 1; ++k) {
        Scalar v = t.s[k];
        red_[n_ + 1 - k] = (k % 2 == 1) ? v : -v;
    }
}

QSeries HZ::get(int e, int k) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return QSeries(order_);
    return it->second[k];
}

QSeries& HZ::at(int e, int k) {
    auto it = terms_.find(e);
    if (it == terms_.end()) it = terms_.emplace(e, std::vector<QSeries>(n_ + 1, QSeries(order_))).first;
    return it->second[k];
}

void HZ::trim() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first < -depth_) it = terms_.erase(it);
        else ++it;
    }
}

HZ HZ::mul_H() const {
    HZ r = *this;
    for (auto& [e, v] : r.terms_) {
        QSeries top = v[n_];
        for (int k = n_; k >= 1; --k) v[k] = v[k - 1];
        v[0] = QSeries(order_);
        for (int k = 0; k <= n_; ++k)
            if (!red_[k].is_zero()) v[k] += top * red_[k];
    }
    return r;
}

HZ HZ::mul_z() const {
    HZ r(*this);
    r.terms_.clear();
    for (auto& [e, v] : terms_) r.terms_.emplace(e + 1, v);
    r.depth_ = depth_ - 1;
    r.trim();
    return r;
}

HZ HZ::mul_q() const {
    HZ r = *this;
    for (auto& [e, v] : r.terms_)
        for (auto& s : v) s = s.shift(1);
    return r;
}

HZ HZ::D() const {
    HZ r = *this;
    for (auto& [e, v] : r.terms_)
        for (auto& s : v) s = s.D();
    return r;
}

HZ HZ::apply_M() const { return mul_H() + D().mul_z(); }

HZ HZ::operator*(const QSeries& s) const {
    HZ r = *this;
    for (auto& [e, v] : r.terms_)
        for (auto& x : v) x = x * s;
    return r;
}

HZ HZ::operator*(const Scalar& s) const {
    HZ r = *this;
    for (auto& [e, v] : r.terms_)
        for (auto& x : v) x *= s;
    return r;
}

HZ& HZ::operator+=(const HZ& o) {
    depth_ = std::min(depth_, o.depth_);
    for (auto& [e, v] : o.terms_)
        for (int k = 0; k <= n_; ++k) at(e, k) += v[k];
    trim();
    return *this;
}

HZ& HZ::operator-=(const HZ& o) {
    depth_ = std::min(depth_, o.depth_);
    for (auto& [e, v] : o.terms_)
        for (int k = 0; k <= n_; ++k) at(e, k) -= v[k];
    trim();
    return *this;
}

bool HZ::is_zero(int* bad_e, int* bad_q) const {
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        for (auto& s : it->second)
            if (!s.is_zero()) {
                if (bad_e) *bad_e = it->first;
                if (bad_q) *bad_q = s.valuation();
                return false;
            }
    return true;
}

std::map<int, QSeries> HZ::restrict_to(const Scalar& x) const {
    std::map<int, QSeries> out;
    for (auto& [e, v] : terms_) {
        QSeries acc(order_);
        Scalar p(1);
        for (int k = 0; k <= n_; ++k) {
            acc += v[k] * p;
            p *= x;
        }
        out.emplace(e, acc);
    }
    return out;
}

namespace {

// polynomial in H (reduced) and w = 1/z truncated at w^W
struct HW {
    int n, W;
    const std::vector<Scalar>* red;
    std::vector<std::vector<Scalar>> c;  // c[m][k]: w^m H^k
    HW(int n_, int W_, const std::vector<Scalar>* r) : n(n_), W(W_), red(r), c(W_ + 1, std::vector<Scalar>(n_ + 1)) {}

    // multiply by (1 + w (a H + b))
    void mul_linear(const Scalar& a, const Scalar& b) {
        for (int m = W; m >= 1; --m) {
            const auto& lo = c[m - 1];
            auto& hi = c[m];
            if (!b.is_zero())
                for (int k = 0; k <= n; ++k) hi[k] += b * lo[k];
            if (!a.is_zero()) {
                for (int k = 0; k < n; ++k) hi[k + 1] += a * lo[k];
                Scalar top = a * lo[n];
                if (!top.is_zero())
                    for (int k = 0; k <= n; ++k) hi[k] += top * (*red)[k];
            }
        }
    }
    // multiply by 1 / (1 + w (a H + b)) via the geometric series
    void div_linear(const Scalar& a, const Scalar& b) {
        HW term = *this, acc = *this;
        for (int m = 1; m <= W; ++m) {
            HW next(n, W, red);
            // next = term * (-w (a H + b))
            for (int j = W; j >= 1; --j) {
                const auto& lo = term.c[j - 1];
                for (int k = 0; k <= n; ++k) next.c[j][k] -= b * lo[k];
                for (int k = 0; k < n; ++k) next.c[j][k + 1] -= a * lo[k];
                Scalar top = a * lo[n];
                for (int k = 0; k <= n; ++k) next.c[j][k] -= top * (*red)[k];
            }
            term = next;
            for (int j = 0; j <= W; ++j)
                for (int k = 0; k <= n; ++k) acc.c[j][k] += term.c[j][k];
        }
        c = acc.c;
    }
};

}  // namespace

HZ ibar(const Target& t, int order, int depth) {
    if (t.kind == TargetKind::Quintic) throw ConfigError("the formal quintic has no equivariant I-function here");
    int n = t.n, N1 = n + 1;
    HZ out(t, order, depth);
    out.at(0, 0)[0] = Scalar(1);
    std::vector<Scalar> red(n + 1);
    for (int k = 1; k <= N1; ++k) red[N1 - k] = (k % 2 == 1) ? t.s[k] : -t.s[k];
    int W = depth - 1;
    if (W < 0) return out;
    mpz_class fact_num = 1;  // ((n+1)d - 1)!
    mpz_class dfact = 1;     // d!
    for (int d = 1; d <= order; ++d) {
        for (int k = N1 * (d - 1); k <= N1 * d - 1; ++k)
            if (k > 0) fact_num *= k;
        dfact *= d;
        mpz_class den = 1;
        for (int i = 0; i < N1; ++i) den *= dfact;
        mpq_class pre(fact_num * N1, den);
        pre.canonicalize();
        if ((N1 * d) % 2 == 1) pre = -pre;

        HW p(n, W, &red);
        p.c[0][1] = Scalar(pre);  // the leading H factor
        for (int k = 1; k <= N1 * d - 1; ++k) p.mul_linear(Scalar::frac(N1, k), Scalar(0));
        for (int i = 0; i < N1; ++i)
            for (int k = 1; k <= d; ++k) p.div_linear(Scalar::frac(1, k), -t.lambda[i] / Scalar(k));
        for (int m = 0; m <= W; ++m)
            for (int k = 0; k <= n; ++k)
                if (!p.c[m][k].is_zero()) out.at(-(m + 1), k)[d] += p.c[m][k];
    }
    return out;
}

QSeries i_coeff(const HZ& ib, int j, int k) { return ib.get(-j, j - k); }

HZ pf_apply(const Target& t, const HZ& f) {
    int N1 = t.n + 1;
    HZ a = f;
    for (int j = 0; j < N1; ++j) a = a.apply_M() - a * t.lambda[j];
    HZ b = f;
    for (int r = 0; r < N1; ++r) {
        HZ m = b.apply_M() * Scalar(N1);
        if (r > 0) m += b.mul_z() * Scalar(r);
        b = m;
    }
    b = b.mul_q();
    return (N1 % 2 == 0) ? a - b : a + b;
}

PFReport pf_check(const Target& t, int order, int zdepth) {
    HZ res = pf_apply(t, ibar(t, order, zdepth + t.n + 1));
    PFReport rep{true, res.depth()};
    if (!res.is_zero(&rep.bad_z_exponent, &rep.bad_q_order)) rep.ok = false;
    return rep;
}

Birkhoff birkhoff(const Target& t, int order, int depth) {
    Birkhoff b;
    b.C.push_back(QSeries::constant(Scalar(1), order));
    b.S.push_back(ibar(t, order, depth));
    for (int j = 0; j < t.n; ++j) {
        HZ m = b.S[j].apply_M();
        std::vector<QSeries> cj;
        for (int k = 0; k <= j; ++k) {
            QSeries ck = m.get(0, k);
            cj.push_back(ck);
            if (!ck.is_zero()) m -= b.S[k] * ck;
        }
        QSeries C = m.get(0, j + 1);
        b.C.push_back(C);
        b.c.push_back(cj);
        b.S.push_back(m * C.invert());
    }
    return b;
}

}  // namespace anomalab
