#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gue.hpp"
#include "rng.hpp"

namespace sffdl {

// Chain of L coupled random-matrix sites, local dimension N:
//   H = sum_n H_n + lambda * sum_n T_{n,n+1}
// with independent GUE blocks of variance 1/N (sites) and 1/N^2 (bonds).
struct ChainSpec {
    int L = 2;
    int N = 32;
    double lambda = 0.1;
    bool periodic = false;
    std::size_t dim_guard = 1u << 16;

    std::size_t dim() const {
        std::size_t d = 1;
        for (int i = 0; i < L; ++i) {
            if (d > dim_guard / static_cast<std::size_t>(N) + 1)
                throw std::runtime_error("ChainSpec: N^L exceeds dimension guard");
            d *= static_cast<std::size_t>(N);
        }
        if (d > dim_guard) throw std::runtime_error("ChainSpec: N^L exceeds dimension guard");
        return d;
    }

    int n_bonds() const { return periodic ? L : L - 1; }

    // Outside N^-1 << lambda << N^-1/4 the perturbative treatment degrades.
    bool in_regime() const {
        return lambda > 1.0 / N && lambda < std::pow(static_cast<double>(N), -0.25);
    }
};

namespace detail {

// Base indices of the Hilbert space with the digits at `site_a` and `site_b`
// fixed to zero (mixed-radix enumeration of the remaining sites).
inline std::vector<std::size_t> rest_bases(int L, int N, int site_a, int site_b) {
    std::vector<std::size_t> strides(L);
    std::size_t s = 1;
    for (int n = 0; n < L; ++n, s *= N) strides[n] = s;
    std::vector<std::size_t> bases{0};
    for (int n = 0; n < L; ++n) {
        if (n == site_a || n == site_b) continue;
        std::vector<std::size_t> next;
        next.reserve(bases.size() * N);
        for (std::size_t b : bases)
            for (int d = 0; d < N; ++d) next.push_back(b + d * strides[n]);
        bases.swap(next);
    }
    return bases;
}

}  // namespace detail

// One sampled chain Hamiltonian plus the N x N site blocks that entered it
// (needed by the energy-density correlator, which probes the same H_m).
template <class Real>
struct ChainRealization {
    std::vector<std::complex<Real>> H;                       // N^L x N^L
    std::vector<std::vector<std::complex<Real>>> site_blocks;  // L blocks, N x N
};

// Dense column-major Hermitian matrix of dimension N^L. The per-site and
// per-bond GUE blocks are drawn in a fixed order from `rng`.
template <class Real>
ChainRealization<Real> build_chain_realization(const ChainSpec& spec, Rng& rng) {
    const std::size_t M = spec.dim();
    const int N = spec.N, L = spec.L;
    ChainRealization<Real> result;
    auto& H = result.H;
    H.assign(M * M, std::complex<Real>(0, 0));

    std::vector<std::size_t> strides(L);
    std::size_t s = 1;
    for (int n = 0; n < L; ++n, s *= N) strides[n] = s;

    const GueSpec site_spec{static_cast<std::size_t>(N), 1.0 / N};
    for (int n = 0; n < L; ++n) {
        result.site_blocks.push_back(sample_gue<Real>(site_spec, rng));
        const auto& h = result.site_blocks.back();
        const auto bases = detail::rest_bases(L, N, n, n);
        for (int b = 0; b < N; ++b)
            for (int a = 0; a < N; ++a) {
                const auto v = h[static_cast<std::size_t>(b) * N + a];
                for (std::size_t base : bases)
                    H[(base + b * strides[n]) * M + (base + a * strides[n])] += v;
            }
    }

    const GueSpec bond_spec{static_cast<std::size_t>(N) * N,
                            1.0 / (static_cast<double>(N) * N)};
    const auto lam = static_cast<Real>(spec.lambda);
    for (int n = 0; n < spec.n_bonds(); ++n) {
        const int m = (n + 1) % L;
        const auto t = sample_gue<Real>(bond_spec, rng);
        const auto bases = detail::rest_bases(L, N, n, m);
        const std::size_t NN = static_cast<std::size_t>(N) * N;
        for (std::size_t q = 0; q < NN; ++q) {        // column pair index
            const std::size_t col_off = (q % N) * strides[n] + (q / N) * strides[m];
            for (std::size_t p = 0; p < NN; ++p) {    // row pair index
                const auto v = lam * t[q * NN + p];
                const std::size_t row_off = (p % N) * strides[n] + (p / N) * strides[m];
                for (std::size_t base : bases)
                    H[(base + col_off) * M + (base + row_off)] += v;
            }
        }
    }
    return result;
}

template <class Real>
std::vector<std::complex<Real>> build_chain_hamiltonian(const ChainSpec& spec, Rng& rng) {
    return build_chain_realization<Real>(spec, rng).H;
}

// Embedded single-site term H_m (same realization convention as the chain
// builder: site blocks are drawn first, in site order).
template <class Real>
void embed_site_operator(int L, int N, int site, const std::vector<std::complex<Real>>& h,
                         std::vector<std::complex<Real>>& out) {
    std::size_t M = 1;
    for (int n = 0; n < L; ++n) M *= static_cast<std::size_t>(N);
    out.assign(M * M, std::complex<Real>(0, 0));
    std::vector<std::size_t> strides(L);
    std::size_t s = 1;
    for (int n = 0; n < L; ++n, s *= N) strides[n] = s;
    const auto bases = detail::rest_bases(L, N, site, site);
    for (int b = 0; b < N; ++b)
        for (int a = 0; a < N; ++a) {
            const auto v = h[static_cast<std::size_t>(b) * N + a];
            for (std::size_t base : bases)
                out[(base + b * strides[site]) * M + (base + a * strides[site])] += v;
        }
}

// Spin-half chain with transverse field and random longitudinal fields and
// couplings:  H = sum_n J_n sz_n sz_{n+1} + sx_n + h_n sz_n.
struct SpinChainSpec {
    int L = 8;
    bool periodic = false;
    double h_lo = -2.0, h_hi = 2.0;
    double J_lo = -0.8, J_hi = 1.2;
    int L_guard = 16;

    std::size_t dim() const {
        if (L < 1 || L > L_guard) throw std::runtime_error("SpinChainSpec: L out of range");
        return static_cast<std::size_t>(1) << L;
    }

    int n_bonds() const { return L == 1 ? 0 : (periodic ? L : L - 1); }
};

// Real symmetric matrix in the sz product basis (bit n set means sz_n = -1).
template <class Real>
std::vector<Real> build_spin_chain(const SpinChainSpec& spec, Rng& rng) {
    const std::size_t M = spec.dim();
    const int L = spec.L;
    std::vector<double> h(L), J(spec.n_bonds());
    for (auto& v : h) v = rng.uniform(spec.h_lo, spec.h_hi);
    for (auto& v : J) v = rng.uniform(spec.J_lo, spec.J_hi);

    std::vector<Real> H(M * M, Real(0));
    for (std::size_t st = 0; st < M; ++st) {
        double diag = 0.0;
        for (int n = 0; n < L; ++n) {
            const double zn = (st >> n) & 1u ? -1.0 : 1.0;
            diag += h[n] * zn;
        }
        for (int b = 0; b < spec.n_bonds(); ++b) {
            const int n = b, m = (b + 1) % L;
            const double zn = (st >> n) & 1u ? -1.0 : 1.0;
            const double zm = (st >> m) & 1u ? -1.0 : 1.0;
            diag += J[b] * zn * zm;
        }
        H[st * M + st] = static_cast<Real>(diag);
        for (int n = 0; n < L; ++n) {  // transverse field flips one spin
            const std::size_t flipped = st ^ (static_cast<std::size_t>(1) << n);
            H[st * M + flipped] += Real(1);
        }
    }
    return H;
}

}  // namespace sffdl
