#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sffdl {

// A sampled function of time with optional per-point standard errors and
// ensemble metadata. For matrix-valued observables (e.g. pair correlators)
// use one Curve per component.
struct Curve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> stderrs;  // empty if not tracked
    long n_realizations = 1;
    std::string label;

    std::size_t size() const { return times.size(); }

    void check() const {
        if (values.size() != times.size() ||
            (!stderrs.empty() && stderrs.size() != times.size()))
            throw std::logic_error("Curve: column length mismatch");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::logic_error("Curve: times must be strictly increasing");
        if (n_realizations < 1) throw std::logic_error("Curve: n_realizations < 1");
    }
};

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1.0));
    return g;
}

}  // namespace sffdl
