#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "curve.hpp"
#include "density.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"
#include "semicircle.hpp"

namespace sffdl {

struct TwoSiteParams {
    int N = 130;
    double lambda = 0.1;

    bool in_regime() const {
        return lambda > 1.0 / N && lambda < std::pow(static_cast<double>(N), -0.25);
    }
};

// Golden-rule exchange rate for a pair at total energy eps_tot.
inline double gamma_rate(double eps_tot, double lambda) {
    return 2.0 * kPi * lambda * lambda * total_density(2).value(eps_tot);
}

// Mean rate over the stationary pair law: 2 pi lambda^2 int rho_tot^2.
inline double gamma_bar(double lambda) {
    const auto& d2 = total_density(2);
    const double i2 = integrate([&](double s) { const double v = d2.value(s); return v * v; },
                                -4.0, 4.0, 1e-10);
    return 2.0 * kPi * lambda * lambda * i2;
}

// Weight remaining on the no-exchange delta function at time t.
inline double no_exchange_weight(double eps_tot, double lambda, double t) {
    return std::exp(-gamma_rate(eps_tot, lambda) * t);
}

// Smooth part of the transferred-energy distribution: the late-time profile
// rho(eps1p - w) rho(eps2p + w) / rho_tot approached with rate gamma.
inline double transfer_distribution(double omega, double eps1p, double eps2p,
                                    double lambda, double t) {
    const double eps_tot = eps1p + eps2p;
    const double denom = total_density(2).value(eps_tot);
    if (denom <= 0.0) return 0.0;
    const double m_inf =
        semicircle_density(eps1p - omega) * semicircle_density(eps2p + omega) / denom;
    return m_inf * (1.0 - no_exchange_weight(eps_tot, lambda, t));
}

// Equal-site energy correlator prediction:
//   C11(t) = int int rho(x) rho(y) x^2 e^{-gamma(x+y) t}
//          + int (1 - e^{-gamma(eps) t}) B(eps),   B = nu1^2/nu0 = (eps^2/4) nu0.
inline double c11_pred(double t, double lambda) {
    if (t < 0.0) throw std::invalid_argument("c11_pred: t >= 0 required");
    static const SemicircleRule rule(160);
    const auto& d2 = total_density(2);
    const double l2 = lambda * lambda;
    double term1 = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double xi = rule.x[i], wi = rule.w[i];
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.x.size(); ++j)
            inner += rule.w[j] *
                     std::exp(-2.0 * kPi * l2 * d2.value(xi + rule.x[j]) * t);
        term1 += wi * xi * xi * inner;
    }
    const double term2 = integrate(
        [&](double s) {
            const double nu0 = d2.value(s);
            return (1.0 - std::exp(-2.0 * kPi * l2 * nu0 * t)) * 0.25 * s * s * nu0;
        },
        -4.0, 4.0, 1e-9);
    return term1 + term2;
}

inline double c12_pred(double t, double lambda) { return 1.0 - c11_pred(t, lambda); }

// Connected-pair SFF contribution with the single-site ramp-plateau kernels:
//   int dx int dy k(x,t) k(y,t) e^{-gamma(x+y) t}.
inline double k1_contribution(double t, const TwoSiteParams& p) {
    const double l2 = p.lambda * p.lambda;
    const auto& d2 = total_density(2);
    return integrate_sqrt_edges(
        [&](double x) {
            const double kx = k_window(x, t, p.N);
            if (kx == 0.0) return 0.0;
            return kx * integrate_sqrt_edges(
                            [&](double y) {
                                return k_window(y, t, p.N) *
                                       std::exp(-2.0 * kPi * l2 * d2.value(x + y) * t);
                            },
                            -2.0, 2.0, 1e-7);
        },
        -2.0, 2.0, 1e-7);
}

// Early-regime form of the same contribution, pure ramp kernels.
inline double k1_contribution_ramp(double t, double lambda) {
    const double l2 = lambda * lambda;
    const auto& d2 = total_density(2);
    const double pref = t / (2.0 * kPi);
    const double iexp = integrate(
        [&](double s) {
            // length of the {x, y in [-2,2], x+y=s} diagonal section
            const double len = 4.0 - std::fabs(s);
            return len * std::exp(-2.0 * kPi * l2 * d2.value(s) * t);
        },
        -4.0, 4.0, 1e-9);
    return pref * pref * iexp;
}

// Exchange-branch SFF contribution: (t/2pi) int (1 - e^{-gamma t}) deps.
inline double k2_contribution(double t, double lambda) {
    const double l2 = lambda * lambda;
    const auto& d2 = total_density(2);
    const double i = integrate(
        [&](double s) { return 1.0 - std::exp(-2.0 * kPi * l2 * d2.value(s) * t); }, -4.0,
        4.0, 1e-9);
    return t / (2.0 * kPi) * i;
}

// Exchange-branch contribution with the total-spectrum window kernel
// min(t/2pi, N^2 rho_tot(eps)) in place of the bare ramp, so each energy
// shell saturates at its own plateau time.
inline double k2_contribution_windowed(double t, const TwoSiteParams& p) {
    const double l2 = p.lambda * p.lambda;
    const auto& d2 = total_density(2);
    const double nn = static_cast<double>(p.N) * p.N;
    return integrate(
        [&](double s) {
            const double v = d2.value(s);
            return std::min(std::fabs(t) / (2.0 * kPi), nn * v) *
                   (1.0 - std::exp(-2.0 * kPi * l2 * v * t));
        },
        -4.0, 4.0, 1e-9);
}

// Ramp-to-plateau interpolation for the coupled pair: the total-spectrum
// kernel min(t/2pi, N^2 rho_tot(eps)).
inline double k_tot_crossover_at(double t, int N) {
    const auto& d2 = total_density(2);
    const double nn = static_cast<double>(N) * N;
    return integrate(
        [&](double s) { return std::min(std::fabs(t) / (2.0 * kPi), nn * d2.value(s)); },
        -4.0, 4.0, 1e-9);
}

enum class TwoSiteRegime { early, late, crossover };

// The three analytic K(t) pieces, each valid in its own window; no stitching.
inline Curve k_two_site_curve(const std::vector<double>& times, const TwoSiteParams& p,
                              TwoSiteRegime regime) {
    Curve c;
    c.times = times;
    c.values.resize(times.size());
    switch (regime) {
        case TwoSiteRegime::early:
            c.label = "early";
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double k1 = k1_approx(p.N, times[i]);
                c.values[i] = k1 * k1;
            }
            break;
        case TwoSiteRegime::late:
            c.label = "late";
            for (std::size_t i = 0; i < times.size(); ++i)
                c.values[i] = k1_contribution(times[i], p) + k2_contribution(times[i], p.lambda);
            break;
        case TwoSiteRegime::crossover:
            c.label = "crossover";
            for (std::size_t i = 0; i < times.size(); ++i)
                c.values[i] = k_tot_crossover_at(times[i], p.N);
            break;
    }
    return c;
}

}  // namespace sffdl
