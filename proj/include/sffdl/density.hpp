#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "quadrature.hpp"
#include "semicircle.hpp"

namespace sffdl {

// Catmull-Rom cubic through four equally spaced samples; u in [0,1] between
// p1 and p2.
inline double catmull_rom(double p0, double p1, double p2, double p3, double u) {
    const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    const double c = 0.5 * (p2 - p0);
    return ((a * u + b) * u + c) * u + p1;
}

// Density of states of L uncoupled sites on a uniform grid over [-2L, 2L].
struct SpectralDensity {
    double support_lo = 0.0, support_hi = 0.0;
    double h = 0.0;                 // grid spacing
    std::vector<double> values;     // density at support_lo + i*h
    int n_sites = 0;

    double grid_point(std::size_t i) const { return support_lo + static_cast<double>(i) * h; }

    double value(double eps) const {
        if (eps <= support_lo || eps >= support_hi) return 0.0;
        const double s = (eps - support_lo) / h;
        const auto i = static_cast<std::ptrdiff_t>(s);
        const double u = s - static_cast<double>(i);
        const auto n = static_cast<std::ptrdiff_t>(values.size());
        const auto at = [&](std::ptrdiff_t j) { return (j < 0 || j >= n) ? 0.0 : values[static_cast<std::size_t>(j)]; };
        const double v = catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2), u);
        return v > 0.0 ? v : 0.0;
    }

    double trapezoid_integral() const {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < values.size(); ++i) s += values[i] + values[i + 1];
        return 0.5 * h * s;
    }
};

namespace detail {

// Exact per-cell masses of the single-site density on cells of width h.
inline std::vector<double> semicircle_cell_masses(double h) {
    const auto n = static_cast<std::size_t>(std::llround(4.0 / h));
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = semicircle_cdf(-2.0 + static_cast<double>(i + 1) * h) -
               semicircle_cdf(-2.0 + static_cast<double>(i) * h);
    return m;
}

inline SpectralDensity build_total_density(int L) {
    const double h = L <= 4 ? 1e-3 : 4e-3;
    const std::vector<double> m1 = semicircle_cell_masses(h);
    // L-fold convolution of cell masses; the sum of L cell-centred variables
    // lives on the lattice L*(-2 + h/2) + k*h.
    std::vector<double> mass = m1;
    for (int l = 1; l < L; ++l) {
        std::vector<double> next(mass.size() + m1.size() - 1, 0.0);
        for (std::size_t i = 0; i < mass.size(); ++i) {
            if (mass[i] == 0.0) continue;
            const double mi = mass[i];
            for (std::size_t j = 0; j < m1.size(); ++j) next[i + j] += mi * m1[j];
        }
        mass.swap(next);
    }

    SpectralDensity d;
    d.n_sites = L;
    d.support_lo = -2.0 * L;
    d.support_hi = 2.0 * L;
    d.h = h;
    const auto ng = static_cast<std::size_t>(std::llround(4.0 * L / h)) + 1;
    d.values.assign(ng, 0.0);

    // Interpolate density = mass/h from the cell-centre lattice onto the
    // clean grid that includes the exact support endpoints.
    const double lat0 = L * (-2.0 + 0.5 * h);
    const auto nl = static_cast<std::ptrdiff_t>(mass.size());
    const auto at = [&](std::ptrdiff_t j) {
        return (j < 0 || j >= nl) ? 0.0 : mass[static_cast<std::size_t>(j)] / h;
    };
    for (std::size_t g = 1; g + 1 < ng; ++g) {
        const double x = d.support_lo + static_cast<double>(g) * h;
        const double s = (x - lat0) / h;
        const auto i = static_cast<std::ptrdiff_t>(std::floor(s));
        d.values[g] = std::max(0.0, catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2),
                                                s - static_cast<double>(i)));
    }
    const double norm = d.trapezoid_integral();
    for (auto& v : d.values) v /= norm;
    return d;
}

}  // namespace detail

// L-fold convolution of the single-site density; cached per L.
inline const SpectralDensity& total_density(int L) {
    if (L < 1) throw std::invalid_argument("total_density: L >= 1 required");
    static std::map<int, SpectralDensity> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(L);
    if (it == cache.end()) {
        SpectralDensity d;
        if (L == 1) {
            d.n_sites = 1;
            d.support_lo = -2.0;
            d.support_hi = 2.0;
            d.h = 1e-3;
            const auto ng = static_cast<std::size_t>(std::llround(4.0 / d.h)) + 1;
            d.values.resize(ng);
            for (std::size_t i = 0; i < ng; ++i) d.values[i] = semicircle_density(d.grid_point(i));
        } else {
            d = detail::build_total_density(L);
        }
        it = cache.emplace(L, std::move(d)).first;
    }
    return it->second;
}

// nu_r(s) = int xi^r rho(xi) rho(s - xi) dxi, the pair-sum moment densities.
// Exact adaptive quadrature with the square-root endpoint substitution.
inline double pair_moment_density(int r, double s) {
    const double lo = std::max(-2.0, s - 2.0), hi = std::min(2.0, s + 2.0);
    if (hi - lo < 1e-14) return 0.0;
    return integrate_sqrt_edges(
        [&](double x) {
            double p = 1.0;
            for (int i = 0; i < r; ++i) p *= x;
            return p * semicircle_density(x) * semicircle_density(s - x);
        },
        lo, hi, 1e-9);
}

// Dense cubic-interpolated table of a function of s on [-4, 4]; used for the
// per-event rate gamma and the pair-update conditional moments.
struct PairTable {
    double h = 2e-3;
    std::vector<double> values;

    template <class F>
    explicit PairTable(const F& f, double step = 2e-3) : h(step) {
        const auto n = static_cast<std::size_t>(std::llround(8.0 / h)) + 1;
        values.resize(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = f(-4.0 + static_cast<double>(i) * h);
    }

    double operator()(double s) const {
        if (s <= -4.0 || s >= 4.0) return 0.0;
        const double t = (s + 4.0) / h;
        const auto i = static_cast<std::ptrdiff_t>(t);
        const auto n = static_cast<std::ptrdiff_t>(values.size());
        const auto at = [&](std::ptrdiff_t j) { return (j < 0 || j >= n) ? 0.0 : values[static_cast<std::size_t>(j)]; };
        return catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2), t - static_cast<double>(i));
    }
};

}  // namespace sffdl
