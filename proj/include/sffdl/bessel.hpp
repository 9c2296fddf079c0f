#pragma once

#include <cmath>

#include "semicircle.hpp"

namespace sffdl {

// Bessel function J1. Ascending series for |x| <= 12, Hankel asymptotic
// expansion beyond; relative error below 1e-10 throughout.
inline double bessel_j1(double x) {
    const double ax = std::fabs(x);
    double result;
    if (ax <= 12.0) {
        // J1(x) = sum_m (-1)^m (x/2)^{2m+1} / (m! (m+1)!)
        const double q = 0.25 * x * x;
        double term = 0.5 * ax;
        double sum = term;
        for (int m = 1; m <= 40; ++m) {
            term *= -q / (static_cast<double>(m) * (m + 1));
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
        }
        result = sum;
    } else {
        // J1(x) ~ sqrt(2/(pi x)) [P(x) cos(chi) - Q(x) sin(chi)], chi = x - 3pi/4
        // with P = t0 - t2 + t4 - ..., Q = t1 - t3 + ...,
        // t_m = a_m/x^m, a_m = prod_{j<=m} (4 - (2j-1)^2) / (8 j)
        const double mu = 4.0;  // 4 nu^2 with nu = 1
        double tm = 1.0, p = 1.0, q = 0.0;
        int sign = 1;
        for (int m = 1; m <= 16; ++m) {
            tm *= (mu - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (8.0 * m * ax);
            if (m % 2 == 1) {
                q += sign * tm;
            } else {
                sign = -sign;
                p += sign * tm;
            }
            if (std::fabs(tm) < 1e-17) break;
        }
        const double chi = ax - 0.75 * kPi;
        result = std::sqrt(2.0 / (kPi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
    }
    return x < 0.0 ? -result : result;
}

// J1(2t)/t with the removable singularity at t = 0 (limit 1).
inline double j1_over_t_of_2t(double t) {
    if (std::fabs(t) < 1e-8) return 1.0 - 0.5 * t * t;
    return bessel_j1(2.0 * t) / t;
}

}  // namespace sffdl
