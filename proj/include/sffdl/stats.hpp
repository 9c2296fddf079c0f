#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sffdl {

// Ordinary least squares y = a + b x.
struct LinFit {
    double a = 0.0, b = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: bad input");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LinFit f;
    f.b = (n * sxy - sx * sy) / denom;
    f.a = (sy - f.b * sx) / n;
    return f;
}

// Golden-section minimization of a unimodal function on [lo, hi].
inline double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double tol = 1e-6) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Survival function of the Kolmogorov distribution.
inline double kolmogorov_q(double lam) {
    if (lam < 1e-3) return 1.0;
    double q = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * (j % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lam * lam);
        q += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, q));
}

// One-sample Kolmogorov-Smirnov test against a continuous CDF.
inline double ks_pvalue(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        dmax = std::max(dmax, std::max(f - i / n, (i + 1) / n - f));
    }
    const double sq = std::sqrt(n);
    return kolmogorov_q((sq + 0.12 + 0.11 / sq) * dmax);
}

// Upper-tail probability of the chi-square distribution (integer dof) via the
// regularized incomplete gamma (continued fraction / series).
inline double chi2_sf(double x, int dof) {
    const double a = 0.5 * dof, hx = 0.5 * x;
    if (hx <= 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (hx < a + 1.0) {  // lower series
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= hx / (a + n);
            sum += term;
            if (term < 1e-15 * sum) break;
        }
        const double p = sum * std::exp(-hx + a * std::log(hx) - lg);
        return std::min(1.0, std::max(0.0, 1.0 - p));
    }
    // upper continued fraction (Lentz)
    double b = hx + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-hx + a * std::log(hx) - lg) * h;
    return std::min(1.0, std::max(0.0, q));
}

}  // namespace sffdl
