#pragma once

#include <cmath>

#include "bessel.hpp"
#include "quadrature.hpp"
#include "semicircle.hpp"

namespace sffdl {

// Single-site connected SFF kernel: linear ramp t/2pi capped at the local
// plateau N*rho(eps). Continuous at |t| = 2 pi N rho(eps).
inline double k_window(double eps, double t, int n_dim) {
    const double rho = semicircle_density(eps);
    if (rho == 0.0) return 0.0;
    const double ramp = std::fabs(t) / (2.0 * kPi);
    const double plateau = n_dim * rho;
    return ramp <= plateau ? ramp : plateau;
}

// Single-site SFF: disconnected term N^2 [J1(2t)/t]^2 plus the integrated
// ramp-plateau kernel int deps k_window(eps, t, N).
inline double k1_approx(int n_dim, double t) {
    const double a = j1_over_t_of_2t(t);
    const double disc = static_cast<double>(n_dim) * n_dim * a * a;
    const double conn = integrate_sqrt_edges(
        [&](double eps) { return k_window(eps, t, n_dim); }, -2.0, 2.0, 1e-9);
    return disc + conn;
}

}  // namespace sffdl
