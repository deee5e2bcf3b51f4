#pragma once

#include "anomalab/hodge.hpp"

#include <map>
#include <string>
#include <vector>

namespace anomalab {

// u^p t_0^c0 t_2^c2 t_3^c3 ... with u = 1/(1 - t_1); t[k] is the exponent of t_{k+2}
struct TMonomial {
    int u = 0;
    int t0 = 0;
    std::vector<int> t;

    int weight() const;  // sum (i-1) c_i over i >= 2, minus c0
    friend bool operator<(const TMonomial& a, const TMonomial& b);
    friend bool operator==(const TMonomial& a, const TMonomial& b) { return a.u == b.u && a.t0 == b.t0 && a.t == b.t; }
};

// element of Q[u^{+-1}][t_0, t_2, t_3, ...]
class CorrelatorValue {
public:
    CorrelatorValue() = default;
    static CorrelatorValue monomial(const TMonomial& m, const Scalar& c);
    static CorrelatorValue u_power(int p);
    // t_j as an element, j >= 0 (t_1 = 1 - u^{-1})
    static CorrelatorValue t_var(int j);

    const std::map<TMonomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const TMonomial& m, const Scalar& c);

    CorrelatorValue& operator+=(const CorrelatorValue& o);
    CorrelatorValue& operator-=(const CorrelatorValue& o);
    friend CorrelatorValue operator+(CorrelatorValue a, const CorrelatorValue& b) { return a += b; }
    friend CorrelatorValue operator-(CorrelatorValue a, const CorrelatorValue& b) { return a -= b; }
    friend CorrelatorValue operator*(const CorrelatorValue& a, const CorrelatorValue& b);
    friend CorrelatorValue operator*(CorrelatorValue a, const Scalar& s);
    friend bool operator==(const CorrelatorValue& a, const CorrelatorValue& b) { return a.terms_ == b.terms_; }

    // drop monomials with t_0-degree above d
    CorrelatorValue truncate_t0(int d) const;
    // d/dt_j, with du/dt_1 = u^2
    CorrelatorValue d_dt(int j) const;
    // every monomial has grading weight w
    bool homogeneous(int w) const;
    // substitute t_j = values[j] (missing entries are zero); requires t_1(0) = 0 if u appears
    QSeries evaluate(const std::vector<QSeries>& values, int order) const;

    std::string str() const;

private:
    std::map<TMonomial, Scalar> terms_;
};

struct CorrelatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// <<psi^a_1, ..., psi^a_n | gamma>>_{g,n} at t_0 = 0.
// max_t > 0 rejects requests that need t_j with j > max_t.
CorrelatorValue correlator_t(int g, const std::vector<int>& a, const LambdaPoly& gamma, int max_t = 0);
// same with t_0 kept as a variable up to degree t0_degree
CorrelatorValue correlator_t0(int g, const std::vector<int>& a, const LambdaPoly& gamma, int t0_degree);

// same correlator with t_0 = t_1 = 0 and t_j = values[j] (zero constant terms), to q^order
QSeries correlator_q(int g, const std::vector<int>& a, const LambdaPoly& gamma, const std::vector<QSeries>& values, int order);

inline LambdaPoly lambda_one() { return {{{0, 0}, Scalar(1)}}; }

// s_i = <<1, ..., 1>>_{0, i+3}
CorrelatorValue s_generator(int i);

// s_0^p s_1^c1 s_2^c2 ...; c[k] is the exponent of s_{k+1}
struct SMonomial {
    int s0 = 0;
    std::vector<int> c;
    friend bool operator<(const SMonomial& a, const SMonomial& b) { return a.s0 != b.s0 ? a.s0 < b.s0 : a.c < b.c; }
    friend bool operator==(const SMonomial& a, const SMonomial& b) { return a.s0 == b.s0 && a.c == b.c; }
};
using SPolynomial = std::map<SMonomial, Scalar>;

// the unique P with <<...>>|_{t_0=0} = P(s_0, s_1, ...)
SPolynomial p_polynomial(const CorrelatorValue& v);
SPolynomial p_polynomial(int g, const std::vector<int>& a, const LambdaPoly& gamma);
CorrelatorValue evaluate_s(const SPolynomial& p);
std::string s_str(const SPolynomial& p);

// residual of the string equation (1 - t_1)<<psi^a, 1>>_{g,n+1} - sum_{i>=1} t_{i+1} d/dt_i <<psi^a>> - sum_j <<..psi^{a_j-1}..>>
// at t_0 = 0; the unstable (0,2) case uses <<1,1>>_{0,2} = 0 and the right side 1.
CorrelatorValue string_residual(int g, const std::vector<int>& a, const LambdaPoly& gamma);

struct Gr2Report {
    bool ok = true;
    int bad_a = -1, bad_b = -1;
};
// <<psi^a, psi^b>>_{0,2} = C(a+b, a) c^{a+b+1} / (a+b+1)! with c = <<1,1>>_{0,2}, t_0-degree <= t0_degree
Gr2Report gr2_check(int max_ab, int t0_degree);

// the genus-0 closed forms for n = 3..6 and the genus 1, 2 expressions in s_0, s_1, ...
struct DisplayCheck {
    std::string label;
    bool ok = false;
    std::string value;
};
std::vector<DisplayCheck> display_checks();

}  // namespace anomalab
