#pragma once

#include "anomalab/series.hpp"

#include <random>

namespace testsupport {

inline anomalab::Scalar random_rational(std::mt19937& rng, int span = 9) {
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    return anomalab::Scalar::frac(num(rng), den(rng));
}

inline anomalab::QSeries random_series(std::mt19937& rng, int order, int span = 9) {
    anomalab::QSeries s(order);
    for (int k = 0; k <= order; ++k) s[k] = random_rational(rng, span);
    return s;
}

}  // namespace testsupport
