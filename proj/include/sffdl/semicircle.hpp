#pragma once

#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace sffdl {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Semicircle density of states, support [-2, 2], unit second moment.
inline double semicircle_density(double eps) {
    const double d = 4.0 - eps * eps;
    return d > 0.0 ? std::sqrt(d) / (2.0 * kPi) : 0.0;
}

// Cumulative distribution of the semicircle law.
inline double semicircle_cdf(double eps) {
    if (eps <= -2.0) return 0.0;
    if (eps >= 2.0) return 1.0;
    return 0.5 + (eps * std::sqrt(4.0 - eps * eps) / 2.0 + 2.0 * std::asin(eps / 2.0)) / (2.0 * kPi);
}

// Even moments of the semicircle law are Catalan numbers: C_{p/2}.
inline double semicircle_moment(int p) {
    if (p < 0) throw std::invalid_argument("semicircle_moment: p must be nonnegative");
    if (p % 2 != 0) throw std::invalid_argument("semicircle_moment: p must be even");
    const int m = p / 2;
    double c = 1.0;
    for (int i = 0; i < m; ++i) c = c * 2.0 * (2 * i + 1) / (i + 2);
    return c;
}

// Rejection sampling from the uniform box [-2,2] x [0, 1/pi]; acceptance pi/4.
inline double sample_semicircle_energy(Rng& rng) {
    for (;;) {
        const double x = rng.uniform(-2.0, 2.0);
        const double y = rng.uniform() / kPi;
        if (y < semicircle_density(x)) return x;
    }
}

}  // namespace sffdl
