#pragma once

#include "anomalab/hseries.hpp"

#include <map>
#include <string>

namespace anomalab {

struct MirrorMap {
    LogSeries T;
    QSeries Q_over_q;  // exp of the tail of T
};

// Named generator series of one target at fixed weights.
struct GeometrySeries {
    Target target;
    int order = 0;
    std::map<std::string, QSeries> s;
    std::vector<QSeries> Li;
    MirrorMap mirror;

    const QSeries& operator[](const std::string& name) const;
    bool has(const std::string& name) const { return s.count(name) > 0; }
};

// hypergeometric helpers shared with the tests' closed forms
mpq_class harmonic(long d);
// (k d)! / (d!)^m as used by the I-series, with k = m for the quintic and sign-free
mpq_class factorial_ratio(long top, long d, int power);

MirrorMap mirror_map(const Target& t, int order);
GeometrySeries build_generators(const Target& t, int order);

struct RelationResult {
    std::string name;
    bool ok;
    int bad_order;  // -1 when ok
};
std::vector<RelationResult> verify_relations(const GeometrySeries& g);

// E22 closed form with the sign in front of the E21 term as a parameter; the other sign is wrong
QSeries e22_residual(const GeometrySeries& g, int i, int sign);

}  // namespace anomalab
