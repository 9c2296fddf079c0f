#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rng.hpp"

namespace sffdl {

// Ensemble convention: [H_ij H_kl]_av = variance_scale * delta_il delta_jk.
// Diagonal entries are real with the same variance as |H_ij|^2 off-diagonal.
struct GueSpec {
    std::size_t dim = 0;
    double variance_scale = 1.0;
};

// Column-major dense Hermitian matrix, leading dimension = dim.
template <class Real>
std::vector<std::complex<Real>> sample_gue(const GueSpec& spec, Rng& rng) {
    const std::size_t n = spec.dim;
    const double sd_diag = std::sqrt(spec.variance_scale);
    const double sd_off = std::sqrt(0.5 * spec.variance_scale);
    std::vector<std::complex<Real>> h(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        h[j * n + j] = std::complex<Real>(static_cast<Real>(rng.normal(0.0, sd_diag)), 0);
        for (std::size_t i = j + 1; i < n; ++i) {
            const auto re = static_cast<Real>(rng.normal(0.0, sd_off));
            const auto im = static_cast<Real>(rng.normal(0.0, sd_off));
            h[j * n + i] = std::complex<Real>(re, im);
            h[i * n + j] = std::complex<Real>(re, -im);
        }
    }
    return h;
}

}  // namespace sffdl
