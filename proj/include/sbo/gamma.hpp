#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "sbo/errors.hpp"

namespace sbo {

inline bool is_nonpositive_integer(double x, double tol = 0.0) {
    return x <= 0.5 && std::abs(x - std::round(x)) <= tol;
}

/// Gamma at a real argument; reflection for negative arguments is handled
/// by the underlying implementation. Poles at non-positive integers.
inline double gamma_float(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("gamma_float: pole at non-positive integer " + std::to_string(x));
    double g = std::tgamma(x);
    if (!std::isfinite(g))
        throw PoleError("gamma_float: non-finite result at " + std::to_string(x));
    return g;
}

/// log|Gamma(x)|.
inline double log_gamma_float(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("log_gamma_float: pole at non-positive integer " + std::to_string(x));
    return std::lgamma(x);
}

/// A floating value carrying the tolerance of the context that produced
/// it; comparisons go through that tolerance, never through ==.
struct ApproxReal {
    double value = 0.0;
    double tolerance = 1e-12;

    bool matches(double other) const {
        return std::abs(value - other) <=
               tolerance * std::max({1.0, std::abs(value), std::abs(other)});
    }
    bool matches_rel(double other) const {
        return std::abs(value - other) <= tolerance * std::abs(other);
    }
    bool is_negligible() const { return std::abs(value) <= tolerance; }
};

/// Rising factorial in floating point.
inline double pochhammer_d(double x, unsigned k) {
    double r = 1.0;
    for (unsigned i = 0; i < k; ++i) r *= (x + i);
    return r;
}

inline double factorial_d(unsigned k) {
    double r = 1.0;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

} // namespace sbo
