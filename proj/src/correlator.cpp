#include "anomalab/correlator.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace anomalab {

namespace {

void trim(std::vector<int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

Scalar factorial(int n) {
    mpz_class r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return Scalar(mpq_class(r));
}

// multisets of parts >= 1 summing to D, as counts cnt[p]
void partitions(int D, int maxpart, std::vector<int>& cnt, const std::function<void(const std::vector<int>&)>& f) {
    if (D == 0) {
        f(cnt);
        return;
    }
    for (int p = std::min(D, maxpart); p >= 1; --p) {
        ++cnt[p];
        partitions(D - p, p, cnt, f);
        --cnt[p];
    }
}

void for_each_heavy(int D, const std::function<void(const std::vector<int>&)>& f) {
    if (D < 0) return;
    std::vector<int> cnt(D + 1, 0);
    partitions(D, D, cnt, f);
}

int sum(const std::vector<int>& a) { return std::accumulate(a.begin(), a.end(), 0); }

CorrelatorValue correlator_impl(int g, const std::vector<int>& a, const LambdaPoly& gamma, int t0_degree, int max_t) {
    int n = static_cast<int>(a.size());
    CorrelatorValue out;
    for (auto& [mono, coeff] : gamma) {
        if (coeff.is_zero()) continue;
        int D0 = 3 * g - 3 + n - sum(a) - lambda_degree(mono);
        for (int c0 = 0; c0 <= t0_degree; ++c0) {
            int D = D0 + c0;
            if (D < 0) continue;
            if (max_t > 0 && D + 1 > max_t && D > 0) throw CorrelatorError("correlator needs t_" + std::to_string(D + 1) + " beyond the configured bound");
            for_each_heavy(D, [&](const std::vector<int>& cnt) {
                // cnt[p] insertions of t_{p+1} psi^{p+1}
                int h = c0;
                for (int p = 1; p <= D; ++p) h += cnt[p];
                if (2 * g - 2 + n + h <= 0) return;
                std::vector<int> psi = a;
                psi.insert(psi.end(), c0, 0);
                Scalar w = factorial(c0).inv();
                TMonomial m;
                m.u = 2 * g - 2 + n + h;
                m.t0 = c0;
                m.t.assign(D, 0);
                for (int p = 1; p <= D; ++p) {
                    psi.insert(psi.end(), cnt[p], p + 1);
                    w /= factorial(cnt[p]);
                    m.t[p - 1] = cnt[p];
                }
                trim(m.t);
                Scalar v = hodge_integral(g, psi, {{mono, coeff}});
                if (!v.is_zero()) out.add(m, v * w);
            });
        }
    }
    return out;
}

}  // namespace

int TMonomial::weight() const {
    int w = -t0;
    for (size_t k = 0; k < t.size(); ++k) w += static_cast<int>(k + 1) * t[k];
    return w;
}

bool operator<(const TMonomial& a, const TMonomial& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.t0 != b.t0) return a.t0 < b.t0;
    return a.u < b.u;
}

CorrelatorValue CorrelatorValue::monomial(const TMonomial& m, const Scalar& c) {
    CorrelatorValue v;
    v.add(m, c);
    return v;
}

CorrelatorValue CorrelatorValue::u_power(int p) {
    TMonomial m;
    m.u = p;
    return monomial(m, Scalar(1));
}

CorrelatorValue CorrelatorValue::t_var(int j) {
    if (j == 1) return u_power(0) - u_power(-1);
    TMonomial m;
    if (j == 0) m.t0 = 1;
    else {
        m.t.assign(j - 1, 0);
        m.t[j - 2] = 1;
    }
    return monomial(m, Scalar(1));
}

void CorrelatorValue::add(const TMonomial& m0, const Scalar& c) {
    if (c.is_zero()) return;
    TMonomial m = m0;
    trim(m.t);
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.emplace(m, c);
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CorrelatorValue& CorrelatorValue::operator+=(const CorrelatorValue& o) {
    for (auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

CorrelatorValue& CorrelatorValue::operator-=(const CorrelatorValue& o) {
    for (auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

CorrelatorValue operator*(const CorrelatorValue& a, const CorrelatorValue& b) {
    CorrelatorValue out;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) {
            TMonomial m;
            m.u = ma.u + mb.u;
            m.t0 = ma.t0 + mb.t0;
            m.t.assign(std::max(ma.t.size(), mb.t.size()), 0);
            for (size_t k = 0; k < ma.t.size(); ++k) m.t[k] += ma.t[k];
            for (size_t k = 0; k < mb.t.size(); ++k) m.t[k] += mb.t[k];
            out.add(m, ca * cb);
        }
    return out;
}

CorrelatorValue operator*(CorrelatorValue a, const Scalar& s) {
    if (s.is_zero()) return {};
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
}

CorrelatorValue CorrelatorValue::truncate_t0(int d) const {
    CorrelatorValue out;
    for (auto& [m, c] : terms_)
        if (m.t0 <= d) out.terms_.emplace(m, c);
    return out;
}

CorrelatorValue CorrelatorValue::d_dt(int j) const {
    CorrelatorValue out;
    for (const auto& kv : terms_) {
        TMonomial m = kv.first;
        Scalar c = kv.second;
        if (j == 0) {
            if (m.t0 == 0) continue;
            c *= Scalar(m.t0--);
        } else if (j == 1) {
            if (m.u == 0) continue;
            c *= Scalar(m.u);
            m.u += 1;
        } else {
            size_t k = j - 2;
            if (k >= m.t.size() || m.t[k] == 0) continue;
            c *= Scalar(m.t[k]--);
        }
        out.add(m, c);
    }
    return out;
}

bool CorrelatorValue::homogeneous(int w) const {
    return std::all_of(terms_.begin(), terms_.end(), [w](const auto& kv) { return kv.first.weight() == w; });
}

QSeries CorrelatorValue::evaluate(const std::vector<QSeries>& values, int order) const {
    auto val = [&](int j) { return j < static_cast<int>(values.size()) ? values[j].truncate(order) : QSeries(order); };
    QSeries one_minus_t1 = QSeries::constant(Scalar(1), order) - val(1);
    QSeries u = one_minus_t1.invert();
    QSeries out(order);
    for (auto& [m, c] : terms_) {
        QSeries term = m.u >= 0 ? u.ipow(m.u) : one_minus_t1.ipow(-m.u);
        if (m.t0) term *= val(0).ipow(m.t0);
        for (size_t k = 0; k < m.t.size(); ++k)
            if (m.t[k]) term *= val(static_cast<int>(k) + 2).ipow(m.t[k]);
        out += term * c;
    }
    return out;
}

std::string CorrelatorValue::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        os << (first ? "" : " + ") << "(" << c.str() << ")";
        first = false;
        if (m.t0) os << "*t0^" << m.t0;
        for (size_t k = 0; k < m.t.size(); ++k)
            if (m.t[k]) os << "*t" << k + 2 << "^" << m.t[k];
        if (m.u) os << "*u^" << m.u;
    }
    return os.str();
}

CorrelatorValue correlator_t(int g, const std::vector<int>& a, const LambdaPoly& gamma, int max_t) {
    if (2 * g - 2 + static_cast<int>(a.size()) <= 0) throw CorrelatorError("unstable (g,n) for a correlator");
    return correlator_impl(g, a, gamma, 0, max_t);
}

CorrelatorValue correlator_t0(int g, const std::vector<int>& a, const LambdaPoly& gamma, int t0_degree) {
    if (g == 1 && a.empty()) throw CorrelatorError("<<>>_{1,0} is not in the correlator ring");
    return correlator_impl(g, a, gamma, t0_degree, 0);
}

QSeries correlator_q(int g, const std::vector<int>& a, const LambdaPoly& gamma, const std::vector<QSeries>& values, int order) {
    int n = static_cast<int>(a.size());
    if (2 * g - 2 + n <= 0) throw CorrelatorError("unstable (g,n) for a correlator");
    for (int j = 0; j < static_cast<int>(values.size()); ++j) {
        const QSeries& v = values[j];
        if (j <= 1 && !v.is_zero()) throw CorrelatorError("correlator_q requires t_0 = t_1 = 0");
        if (!v[0].is_zero()) throw CorrelatorError("t_" + std::to_string(j) + " has a nonzero constant term");
    }
    std::map<std::pair<int, int>, QSeries> powers;
    auto tpow = [&](int j, int e) -> const QSeries& {
        auto key = std::make_pair(j, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        QSeries v = j < static_cast<int>(values.size()) ? values[j].truncate(order) : QSeries(order);
        return powers.emplace(key, v.ipow(e)).first->second;
    };
    QSeries out(order);
    for (auto& [mono, coeff] : gamma) {
        if (coeff.is_zero()) continue;
        int D = 3 * g - 3 + n - sum(a) - lambda_degree(mono);
        for_each_heavy(D, [&](const std::vector<int>& cnt) {
            int h = 0;
            for (int p = 1; p <= D; ++p) h += cnt[p];
            // each insertion carries at least one power of q
            if (h > order) return;
            std::vector<int> psi = a;
            Scalar w = coeff;
            QSeries term = QSeries::constant(Scalar(1), order);
            for (int p = 1; p <= D; ++p) {
                if (!cnt[p]) continue;
                psi.insert(psi.end(), cnt[p], p + 1);
                w /= factorial(cnt[p]);
                term *= tpow(p + 1, cnt[p]);
            }
            if (term.is_zero()) return;
            Scalar v = hodge_descendent_integral({g, psi, mono.first, mono.second});
            if (!v.is_zero()) out += term * (v * w);
        });
    }
    return out;
}

CorrelatorValue s_generator(int i) { return correlator_t(0, std::vector<int>(i + 3, 0), lambda_one()); }

namespace {

// order used for triangular elimination: highest t-index first, then u
bool lead_less(const TMonomial& a, const TMonomial& b) {
    if (a.t.size() != b.t.size()) return a.t.size() < b.t.size();
    for (size_t k = a.t.size(); k-- > 0;)
        if (a.t[k] != b.t[k]) return a.t[k] < b.t[k];
    return a.u < b.u;
}

CorrelatorValue expand(const SMonomial& m, std::map<int, CorrelatorValue>& gens) {
    CorrelatorValue v = CorrelatorValue::u_power(m.s0);
    for (size_t k = 0; k < m.c.size(); ++k) {
        if (!m.c[k]) continue;
        int i = static_cast<int>(k) + 1;
        if (!gens.count(i)) gens[i] = s_generator(i);
        for (int e = 0; e < m.c[k]; ++e) v = v * gens[i];
    }
    return v;
}

}  // namespace

SPolynomial p_polynomial(const CorrelatorValue& v0) {
    CorrelatorValue v = v0;
    SPolynomial out;
    std::map<int, CorrelatorValue> gens;
    for (int guard = 0; !v.is_zero(); ++guard) {
        if (guard > 100000) throw CorrelatorError("representation inconsistency: elimination does not terminate");
        auto lead = v.terms().begin();
        for (auto it = v.terms().begin(); it != v.terms().end(); ++it)
            if (lead_less(lead->first, it->first)) lead = it;
        const TMonomial& m = lead->first;
        if (m.t0) throw CorrelatorError("p_polynomial needs t_0 = 0");
        SMonomial s;
        s.c = m.t;
        s.s0 = m.u;
        for (size_t k = 0; k < m.t.size(); ++k) s.s0 -= static_cast<int>(k + 3) * m.t[k];
        Scalar c = lead->second;
        CorrelatorValue e = expand(s, gens);
        auto chk = e.terms().find(m);
        if (chk == e.terms().end() || !chk->second.is_one()) throw CorrelatorError("representation inconsistency: leading term mismatch");
        out[s] += c;
        v -= e * c;
    }
    return out;
}

SPolynomial p_polynomial(int g, const std::vector<int>& a, const LambdaPoly& gamma) { return p_polynomial(correlator_t(g, a, gamma)); }

CorrelatorValue evaluate_s(const SPolynomial& p) {
    std::map<int, CorrelatorValue> gens;
    CorrelatorValue out;
    for (auto& [m, c] : p) out += expand(m, gens) * c;
    return out;
}

std::string s_str(const SPolynomial& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        auto& [m, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        os << (neg ? cs.substr(1) : cs);
        first = false;
        int s0 = m.s0;
        if (s0 > 0) os << "*s0" << (s0 > 1 ? "^" + std::to_string(s0) : "");
        for (size_t k = 0; k < m.c.size(); ++k)
            if (m.c[k]) os << "*s" << k + 1 << (m.c[k] > 1 ? "^" + std::to_string(m.c[k]) : "");
        if (s0 < 0) os << "/s0" << (s0 < -1 ? "^" + std::to_string(-s0) : "");
    }
    return os.str();
}

CorrelatorValue string_residual(int g, const std::vector<int>& a, const LambdaPoly& gamma) {
    std::vector<int> more = a;
    more.push_back(0);
    CorrelatorValue lhs = CorrelatorValue::u_power(-1) * correlator_t(g, more, gamma);
    if (g == 0 && a.size() == 2) {
        if (a[0] || a[1]) throw CorrelatorError("string check on (0,2) supports <<1,1>> only");
        return lhs - CorrelatorValue::u_power(0);
    }
    CorrelatorValue base = correlator_t(g, a, gamma);
    int top = 1;
    for (auto& [m, c] : base.terms()) top = std::max(top, static_cast<int>(m.t.size()) + 1);
    for (int i = 1; i <= top; ++i) lhs -= CorrelatorValue::t_var(i + 1) * base.d_dt(i);
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        std::vector<int> lower = a;
        --lower[j];
        lhs -= correlator_t(g, lower, gamma);
    }
    return lhs;
}

Gr2Report gr2_check(int max_ab, int t0_degree) {
    Gr2Report rep;
    CorrelatorValue c = correlator_t0(0, {0, 0}, lambda_one(), t0_degree);
    std::vector<CorrelatorValue> cpow = {CorrelatorValue::u_power(0)};
    for (int k = 1; k <= 2 * max_ab + 1; ++k) cpow.push_back((cpow.back() * c).truncate_t0(t0_degree));
    for (int a = 0; a <= max_ab; ++a)
        for (int b = 0; b <= max_ab; ++b) {
            CorrelatorValue lhs = correlator_t0(0, {a, b}, lambda_one(), t0_degree);
            int k = a + b + 1;
            Scalar w = factorial(a + b) / (factorial(a) * factorial(b) * factorial(k));
            if (!(lhs == cpow[k] * w)) {
                rep.ok = false;
                rep.bad_a = a;
                rep.bad_b = b;
                return rep;
            }
        }
    return rep;
}

namespace {

CorrelatorValue term(const Scalar& c, int u, std::vector<int> t) { return CorrelatorValue::monomial(TMonomial{u, 0, std::move(t)}, c); }

SPolynomial sterm(SPolynomial p, const Scalar& c, int s0, std::vector<int> e) {
    p[SMonomial{s0, std::move(e)}] += c;
    return p;
}

}  // namespace

std::vector<DisplayCheck> display_checks() {
    std::vector<DisplayCheck> out;
    auto g0 = [&](int n, const CorrelatorValue& want) {
        CorrelatorValue got = correlator_t(0, std::vector<int>(n, 0), lambda_one());
        out.push_back({"<<1^" + std::to_string(n) + ">>_{0," + std::to_string(n) + "}", got == want, got.str()});
    };
    g0(3, term(Scalar(1), 1, {}));
    g0(4, term(Scalar(1), 3, {1}));
    g0(5, term(Scalar(1), 4, {0, 1}) + term(Scalar(3), 5, {2}));
    g0(6, term(Scalar(1), 5, {0, 0, 1}) + term(Scalar(10), 6, {1, 1}) + term(Scalar(15), 7, {3}));
    auto hg = [&](const std::string& label, int g, int n, const SPolynomial& want) {
        SPolynomial got = p_polynomial(g, std::vector<int>(n, 0), lambda_one());
        out.push_back({label, got == want, s_str(got)});
    };
    Scalar c24 = Scalar::frac(1, 24);
    hg("<<1,1>>_{1,2}", 1, 2, sterm(sterm({}, c24, -1, {0, 1}), -c24, -2, {2}));
    hg("<<1>>_{1,1}", 1, 1, sterm({}, c24, -1, {1}));
    hg("<<>>_{2,0}", 2, 0,
       sterm(sterm(sterm({}, Scalar::frac(1, 1152), -2, {0, 0, 1}), Scalar::frac(-7, 1920), -3, {1, 1}), Scalar::frac(1, 360), -4, {3}));
    return out;
}

}  // namespace anomalab
