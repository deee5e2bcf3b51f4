#include <doctest.h>

#include "anomalab/series.hpp"
#include "random_series.hpp"

using anomalab::QSeries;
using anomalab::Scalar;

namespace {

QSeries from_longs(std::initializer_list<long> v) {
    std::vector<Scalar> c;
    for (long x : v) c.emplace_back(x);
    return QSeries(c);
}

QSeries linear(long c0, long c1, int order) {
    QSeries s(order);
    s[0] = Scalar(c0);
    s[1] = Scalar(c1);
    return s;
}

// independent convolution for the product oracle
std::vector<mpq_class> convolve(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, size_t n) {
    std::vector<mpq_class> r(n + 1, 0);
    for (size_t i = 0; i <= n; ++i)
        for (size_t j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

}  // namespace

TEST_CASE("series product basics") {
    CHECK(linear(1, 1, 4) * linear(1, -1, 4) == from_longs({1, 0, -1, 0, 0}));
    std::mt19937 rng(3);
    QSeries a = testsupport::random_series(rng, 6);
    CHECK(a * QSeries::constant(Scalar(1), 6) == a);
}

TEST_CASE("binomial powers by repeated products") {
    QSeries p = linear(1, 27, 5).ipow(5);
    std::vector<mpq_class> a = {1, 27, 0, 0, 0, 0}, acc = {1, 0, 0, 0, 0, 0};
    for (int k = 0; k < 5; ++k) acc = convolve(acc, a, 5);
    for (int k = 0; k <= 5; ++k) CHECK(p[k] == Scalar(acc[k]));
}

TEST_CASE("inverse, exp, log, roots") {
    QSeries g = linear(1, -1, 6).invert();
    for (int k = 0; k <= 6; ++k) CHECK(g[k] == Scalar(1));
    CHECK(QSeries(6).exp() == QSeries::constant(Scalar(1), 6));

    QSeries r3 = linear(1, 27, 8).root(-3);
    CHECK(r3[0] == Scalar(1));
    CHECK(r3[1] == Scalar(-9));
    CHECK(r3[2] == Scalar(162));
    QSeries r4 = linear(1, -256, 8).root(-4);
    CHECK(r4[1] == Scalar(64));
    CHECK(r4[2] == Scalar(10240));

    QSeries c1 = linear(1, 27, 10).invert();
    CHECK(c1 * c1.invert() == QSeries::constant(Scalar(1), 10));
}

TEST_CASE("functional identities on random series") {
    std::mt19937 rng(7);
    for (int t = 0; t < 5; ++t) {
        QSeries a = testsupport::random_series(rng, 12), b = testsupport::random_series(rng, 12), c = testsupport::random_series(rng, 12);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);

        QSeries u = a;
        u[0] = Scalar(1);
        CHECK(u.log().exp() == u);
        QSeries v = a;
        v[0] = Scalar(0);
        CHECK(v.exp().log() == v);
        for (long m : {2L, 3L, -2L, -5L}) CHECK(u.root(m).ipow(m) == u);
    }
}

TEST_CASE("D operator and log series") {
    QSeries q2 = QSeries::monomial(Scalar(1), 2, 4);
    CHECK(q2.D() == QSeries::monomial(Scalar(2), 2, 4));
    anomalab::LogSeries t{Scalar(1), QSeries::monomial(Scalar(3), 1, 4)};
    CHECK(t.D() == linear(1, 3, 4));
    CHECK_THROWS_AS(QSeries::constant(Scalar(1), 3).Dinv(), anomalab::SeriesError);
}

TEST_CASE("precondition violations") {
    CHECK_THROWS_AS(QSeries(3).invert(), anomalab::SeriesError);
    CHECK_THROWS_AS(QSeries::constant(Scalar(1), 3).exp(), anomalab::SeriesError);
    CHECK_THROWS_AS(QSeries::constant(Scalar(2), 3).log(), anomalab::SeriesError);
}

TEST_CASE("newton root of a cubic") {
    // (1+27q) L^3 - s1 L^2 + s2 L - s3 with weights 1, 2, 5
    int N = 10;
    Scalar s1(8), s2(17), s3(10);
    std::vector<QSeries> P = {QSeries::constant(-s3, N), QSeries::constant(s2, N), QSeries::constant(-s1, N), linear(1, 27, N)};
    QSeries sum(N), prod = QSeries::constant(Scalar(1), N);
    for (long lam : {1L, 2L, 5L}) {
        QSeries L = anomalab::newton_root(P, Scalar(lam), N);
        CHECK(L[0] == Scalar(lam));
        CHECK(anomalab::poly_eval(P, L).is_zero());
        sum += L;
        prod *= L;
    }
    // Vieta
    CHECK(sum == linear(1, 27, N).invert() * s1);
    CHECK(prod * linear(1, 27, N) == QSeries::constant(s3, N));
    CHECK(anomalab::newton_root(P, Scalar(2), 0)[0] == Scalar(2));
    std::vector<QSeries> dbl = {QSeries::constant(Scalar(1), N), QSeries::constant(Scalar(-2), N), QSeries::constant(Scalar(1), N)};
    CHECK_THROWS_AS(anomalab::newton_root(dbl, Scalar(1), N), anomalab::SeriesError);
}

TEST_CASE("composition and reversion") {
    std::mt19937 rng(5);
    QSeries g = testsupport::random_series(rng, 9);
    g[0] = Scalar(0);
    g[1] = Scalar(2);
    QSeries h = g.reversion();
    CHECK(g.compose(h) == QSeries::monomial(Scalar(1), 1, 9));
    CHECK(h.compose(g) == QSeries::monomial(Scalar(1), 1, 9));
}
