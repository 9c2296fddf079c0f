#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "semicircle.hpp"

namespace sffdl {

namespace detail {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kGk15Weights[7] * fc;
    double resg = kG7Weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double fv = f(c - h * kGk15Nodes[i]) + f(c + h * kGk15Nodes[i]);
        resk += kGk15Weights[i] * fv;
        if (i % 2 == 1) resg += kG7Weights[i / 2] * fv;
    }
    value = resk * h;
    error = std::fabs((resk - resg) * h);
}

}  // namespace detail

// Adaptive 1-D quadrature: recursive bisection driven by the embedded
// Gauss-Kronrod error estimate.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 1e-14, int max_depth = 40) {
    struct Rec {
        const F& f;
        double tol_per_len;  // error budget per unit length
        double run(double a, double b, double value, double error, int depth) {
            if (error <= tol_per_len * (b - a) || depth <= 0) return value;
            const double m = 0.5 * (a + b);
            double vl, el, vr, er;
            detail::gk15(f, a, m, vl, el);
            detail::gk15(f, m, b, vr, er);
            return run(a, m, vl, el, depth - 1) + run(m, b, vr, er, depth - 1);
        }
    };
    double v, e;
    detail::gk15(f, a, b, v, e);
    const double budget = abs_tol + rel_tol * std::fabs(v);
    Rec rec{f, budget / (b - a)};
    return rec.run(a, b, v, e, max_depth);
}

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// on the Legendre polynomial.
struct GaussLegendre {
    std::vector<double> nodes, weights;

    explicit GaussLegendre(int n) {
        if (n < 1) throw std::invalid_argument("GaussLegendre: n >= 1 required");
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

// Nodes/weights for integrals of the form  int_{-2}^{2} rho(x) f(x) dx,
// using the substitution x = 2 sin(theta) which removes the band-edge
// square-root behaviour: rho(x) dx = (2/pi) cos^2(theta) dtheta.
struct SemicircleRule {
    std::vector<double> x, w;

    explicit SemicircleRule(int n) {
        GaussLegendre gl(n);
        x.resize(n);
        w.resize(n);
        for (int i = 0; i < n; ++i) {
            const double th = gl.nodes[i] * (kPi / 2.0);
            const double c = std::cos(th);
            x[i] = 2.0 * std::sin(th);
            w[i] = gl.weights[i] * (kPi / 2.0) * (2.0 / kPi) * c * c;
        }
    }
};

// int_a^b f(x) dx with inverse-square-root integrable singularities allowed at
// either endpoint, handled by the substitution x = a + u^2 / x = b - u^2.
template <class F>
double integrate_sqrt_edges(const F& f, double a, double b, double rel_tol = 1e-10) {
    const double m = 0.5 * (a + b);
    const double lo = integrate([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0,
                                std::sqrt(m - a), rel_tol);
    const double hi = integrate([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0,
                                std::sqrt(b - m), rel_tol);
    return lo + hi;
}

}  // namespace sffdl
