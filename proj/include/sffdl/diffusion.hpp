#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve.hpp"
#include "density.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "semicircle.hpp"
#include "stats.hpp"

namespace sffdl {

struct DiffEstimate {
    double D_over_lambda2 = 0.0;
    std::string method;
    double uncertainty = 0.0;
};

// Golden-rule estimate: D = (pi/2) int int (x-y)^2 rho(x) rho(y) rho_tot(x+y).
inline DiffEstimate d_golden_rule() {
    static const SemicircleRule rule(240);
    const auto& d2 = total_density(2);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        for (std::size_t j = 0; j < rule.x.size(); ++j) {
            const double d = rule.x[i] - rule.x[j];
            s += rule.w[i] * rule.w[j] * d * d * d2.value(rule.x[i] + rule.x[j]);
        }
    return {0.5 * kPi * s, "golden_rule_integral", 5e-6};
}

namespace detail {

// Interpolated pair-sum moment densities nu_r(s) used throughout the
// linearized moment system.
struct NuTables {
    PairTable nu0, nu2, nu3;

    NuTables()
        : nu0([](double s) { return pair_moment_density(0, s); }),
          nu2([](double s) { return pair_moment_density(2, s); }),
          nu3([](double s) { return pair_moment_density(3, s); }) {}
};

inline const NuTables& nu_tables() {
    static const NuTables t;
    return t;
}

// Pair-kernel integrals with K(x,y) = rho(x) rho(y) gamma(x+y), gamma = 2 pi nu0:
//   I[pq]     = int int K x^p y^q
//   Mr[r][pq] = int int K m_r(x+y) x^p y^q,  m_r = nu_r / nu0
// reduced to the closed set of coefficients entering the 4x4 generator.
struct MomentCoeffs {
    double A1, A3, B1, E0, E2;
    double P1, P2, P3, P4, P5, P6;
    double Tb0, Tb1, Tg0, Tg1, Tu0, Tv1, Tv2;

    MomentCoeffs() {
        const SemicircleRule rule(200);
        const auto& nt = nu_tables();
        auto I = [&](int p, int q) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.x.size(); ++i)
                for (std::size_t j = 0; j < rule.x.size(); ++j)
                    s += rule.w[i] * rule.w[j] * 2.0 * kPi * nt.nu0(rule.x[i] + rule.x[j]) *
                         ipow(rule.x[i], p) * ipow(rule.x[j], q);
            return s;
        };
        auto Mr = [&](int r, int p, int q) {
            const PairTable& nur = r == 2 ? nt.nu2 : nt.nu3;
            double s = 0.0;
            for (std::size_t i = 0; i < rule.x.size(); ++i)
                for (std::size_t j = 0; j < rule.x.size(); ++j)
                    s += rule.w[i] * rule.w[j] * 2.0 * kPi * nur(rule.x[i] + rule.x[j]) *
                         ipow(rule.x[i], p) * ipow(rule.x[j], q);
            return s;
        };
        const double I20 = I(2, 0), I11 = I(1, 1), I40 = I(4, 0), I31 = I(3, 1);
        const double I22 = I(2, 2), I33 = I(3, 3), I42 = I(4, 2), I51 = I(5, 1);
        const double I60 = I(6, 0);
        const double M200 = Mr(2, 0, 0), M220 = Mr(2, 2, 0), M211 = Mr(2, 1, 1);
        const double M231 = Mr(2, 3, 1), M222 = Mr(2, 2, 2), M240 = Mr(2, 4, 0);
        const double M310 = Mr(3, 1, 0), M330 = Mr(3, 3, 0), M321 = Mr(3, 2, 1);
        A1 = 0.5 * (I20 - I11);
        A3 = 0.5 * (I40 - I31);
        B1 = 0.5 * (I22 - I31);
        E0 = M200 - I20;
        E2 = M220 - I40;
        P1 = M310 - I40;
        P2 = M310 - I31;
        P3 = M330 - I60;
        P4 = M330 - I33;
        P5 = M321 - I51;
        P6 = M321 - I42;
        Tb0 = M220 + M211 - M310 - I31;
        Tb1 = M220 + M211 - M310 - I22 + E0 - A1;
        Tg0 = M240 + M231 - M330 - I51;
        Tg1 = M240 + M231 - M330 - I42 + 2.0 * E0 - A3;
        Tu0 = M231 + M222 - M321 - I42 + E2 - 2.0 * A1;
        Tv1 = M222 + M231 - M321 - I33;
        Tv2 = M220 + M211 - M310 - I22 + E0 - B1;
    }

    static double ipow(double x, int p) {
        double v = 1.0;
        for (int i = 0; i < p; ++i) v *= x;
        return v;
    }
};

inline const MomentCoeffs& moment_coeffs() {
    static const MomentCoeffs c;
    return c;
}

}  // namespace detail

// Linearized relaxation of the moment fields (eps_n, eps_n^3, eps_n^2 eps_{n+1},
// eps_n^2 eps_{n-1}) at wavenumber k. G0 generates d/dt c = G0 c; A is the
// static covariance of the fields under the product stationary law.
struct MomentSystem {
    double k = 0.0;
    std::array<std::complex<double>, 16> G0{};  // row-major
    std::array<std::complex<double>, 16> A{};
    std::array<std::complex<double>, 16> S{};   // response of d/dt c to the multipliers
    std::array<std::complex<double>, 16> M{};   // multipliers in terms of the fields
};

inline MomentSystem build_moment_system(double k) {
    using C = std::complex<double>;
    const auto& c = detail::moment_coeffs();
    const C e = std::polar(1.0, k), e2 = e * e, e3 = e2 * e;
    const C em = std::conj(e), em2 = std::conj(e2), em3 = std::conj(e3);
    const double ck = std::cos(k);

    // Response of the moment time-derivatives to the multiplier fields
    // (beta, g, u, v): d/dt c_i = -sum_j S_ij mult_j.
    std::array<C, 16> S{};
    const auto set = [&](int r, int col, C v) { S[r * 4 + col] = v; };
    set(0, 0, c.A1 * (-2.0 + 2.0 * ck));
    set(0, 1, c.A3 * (-2.0 + 2.0 * ck));
    set(0, 2, c.B1 + (-c.A1 - c.B1) * em + c.A1 * em2);
    set(0, 3, c.B1 + (-c.A1 - c.B1) * e + c.A1 * e2);
    set(1, 0, 2.0 * c.P1 + 2.0 * c.P2 * ck);
    set(1, 1, 2.0 * c.P3 + 2.0 * c.P4 * ck);
    set(1, 2, c.P5 + (c.P1 + c.P6) * em + c.P2 * em2);
    set(1, 3, c.P5 + (c.P1 + c.P6) * e + c.P2 * e2);
    set(2, 0, c.Tb0 + c.Tb1 * e + c.A1 * e2);
    set(2, 1, c.Tg0 + c.Tg1 * e + c.A3 * e2);
    set(2, 2, c.Tu0 + c.B1 * e + c.Tb0 * em);
    set(2, 3, c.Tv1 * e + c.Tv2 * e2 + c.A1 * e3);
    // row for eps_n^2 eps_{n-1}: mirror of the previous row with k -> -k and
    // the two straddling multipliers swapped
    set(3, 0, c.Tb0 + c.Tb1 * em + c.A1 * em2);
    set(3, 1, c.Tg0 + c.Tg1 * em + c.A3 * em2);
    set(3, 2, c.Tv1 * em + c.Tv2 * em2 + c.A1 * em3);
    set(3, 3, c.Tu0 + c.B1 * em + c.Tb0 * e);

    // Multipliers in terms of the moment fields (inverse susceptibility).
    std::array<C, 16> M{};
    M[0 * 4 + 0] = -7.0; M[0 * 4 + 1] = 2.0; M[0 * 4 + 2] = em; M[0 * 4 + 3] = e;
    M[1 * 4 + 0] = 2.0;  M[1 * 4 + 1] = -1.0;
    M[2 * 4 + 0] = e;    M[2 * 4 + 2] = -1.0;
    M[3 * 4 + 0] = em;   M[3 * 4 + 3] = -1.0;

    MomentSystem sys;
    sys.k = k;
    sys.S = S;
    sys.M = M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            C acc = 0.0;
            for (int l = 0; l < 4; ++l) acc += S[i * 4 + l] * M[l * 4 + j];
            sys.G0[i * 4 + j] = -acc;
        }

    // Static covariance matrix of the four fields (semicircle moments 1, 2, 5).
    const auto setA = [&](int r, int col, C v) { sys.A[r * 4 + col] = v; };
    setA(0, 0, 1.0); setA(0, 1, 2.0); setA(0, 2, e);        setA(0, 3, em);
    setA(1, 0, 2.0); setA(1, 1, 5.0); setA(1, 2, 2.0 * e);  setA(1, 3, 2.0 * em);
    setA(2, 0, em);  setA(2, 1, 2.0 * em); setA(2, 2, 2.0); setA(2, 3, 4.0);
    setA(3, 0, e);   setA(3, 1, 2.0 * e);  setA(3, 2, 4.0); setA(3, 3, 2.0);
    return sys;
}

namespace detail {

// Solve the 4x4 complex system B X = Y for one column by Gaussian elimination.
inline std::array<std::complex<double>, 4> solve4(std::array<std::complex<double>, 16> B,
                                                  std::array<std::complex<double>, 4> y) {
    using C = std::complex<double>;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(B[r * 4 + col]) > std::abs(B[piv * 4 + col])) piv = r;
        if (piv != col) {
            for (int j = 0; j < 4; ++j) std::swap(B[col * 4 + j], B[piv * 4 + j]);
            std::swap(y[col], y[piv]);
        }
        const C d = B[col * 4 + col];
        if (std::abs(d) < 1e-300) throw std::runtime_error("solve4: singular system");
        for (int r = col + 1; r < 4; ++r) {
            const C f = B[r * 4 + col] / d;
            for (int j = col; j < 4; ++j) B[r * 4 + j] -= f * B[col * 4 + j];
            y[r] -= f * y[col];
        }
    }
    std::array<C, 4> x{};
    for (int r = 3; r >= 0; --r) {
        C acc = y[r];
        for (int j = r + 1; j < 4; ++j) acc -= B[r * 4 + j] * x[j];
        x[r] = acc / B[r * 4 + r];
    }
    return x;
}

// D(k) = 1 / (k^2 C_11(k, omega -> 0)), C = (-G0)^{-1} A.
inline double d_moment_at_k(double k) {
    const MomentSystem sys = build_moment_system(k);
    std::array<std::complex<double>, 16> negG0;
    for (int i = 0; i < 16; ++i) negG0[i] = -sys.G0[i];
    const auto col = solve4(negG0, {sys.A[0], sys.A[4], sys.A[8], sys.A[12]});
    return 1.0 / (k * k * col[0].real());
}

}  // namespace detail

// Improved diffusion estimate from the 4-moment closure; Richardson
// extrapolation of D(k) over k in {0.02, 0.01, 0.005} (D(k) = D + O(k^2)).
inline DiffEstimate d_moment_matrix() {
    const double d1 = detail::d_moment_at_k(0.02);
    const double d2 = detail::d_moment_at_k(0.01);
    const double d3 = detail::d_moment_at_k(0.005);
    const double extr = d3 + (d3 - d2) / 3.0;
    const double unc = std::max(std::fabs(d3 - d2), std::fabs(extr - d3)) + 1e-4;
    return {extr, "moment_matrix", unc};
}

// Truncation to the single field eps_n reproduces the golden-rule value.
inline double d_moment_single_field() {
    const auto& c = detail::moment_coeffs();
    return c.A1;  // rate 2 A1 (1 - cos k) -> D = A1
}

// Mode relaxation profile of the conserved density.
inline double phi_k(double k, double t, double D) {
    if (!(D > 0.0) || t < 0.0) throw std::invalid_argument("phi_k: D > 0, t >= 0 required");
    return 1.0 - std::exp(-2.0 * D * (1.0 - std::cos(k)) * t);
}

// Inverse return probability of the diffusive field on a ring of odd L,
// relative to its late-time limit, plus the leading asymptotic sum.
struct ReturnEnhancement {
    double product = 0.0;    // prod_K 1/phi_{2 pi K / L}
    double asymptotic = 0.0; // 1 + sum_K exp(-4 pi^2 K^2 D t / L^2)
};

inline ReturnEnhancement return_enhancement(int L, double D, double t) {
    if (L < 3 || L % 2 == 0) throw std::invalid_argument("return_enhancement: odd L >= 3");
    ReturnEnhancement r;
    r.product = 1.0;
    for (int K = 1; K <= (L - 1) / 2; ++K) {
        const double p = phi_k(2.0 * kPi * K / L, t, D);
        if (p == 0.0) {
            r.product = std::numeric_limits<double>::infinity();
            break;
        }
        r.product /= p;
    }
    double s = 0.0;
    for (int K = 1; K <= 100; ++K) s += std::exp(-4.0 * kPi * kPi * K * K * D * t / (L * L));
    r.asymptotic = 1.0 + s;
    return r;
}

// Exact per-mode Ornstein-Uhlenbeck simulation of the noisy diffusion
// equation on a ring: mode k relaxes at 2D(1-cos k) and is driven by the
// conserving (discrete-gradient) noise of strength 2 mu (1 - cos k).
struct NoisyModeCurves {
    std::vector<double> ks;
    std::vector<std::vector<double>> measured;   // Var[eps_k(t) - eps_k(0)] per mode
    std::vector<std::vector<double>> predicted;  // (mu/D) phi_k(t)
    long n_samples = 0;
};

inline NoisyModeCurves noisy_diffusion_sim(int L, double D, double mu,
                                           const std::vector<double>& t_grid,
                                           long n_samples, uint64_t master_seed) {
    if (L < 3 || L % 2 == 0) throw std::invalid_argument("noisy_diffusion_sim: odd L >= 3");
    const int n_modes = (L - 1) / 2;
    NoisyModeCurves out;
    out.n_samples = n_samples;
    out.ks.resize(n_modes);
    out.measured.assign(n_modes, std::vector<double>(t_grid.size(), 0.0));
    out.predicted.assign(n_modes, std::vector<double>(t_grid.size()));
    for (int m = 0; m < n_modes; ++m) {
        out.ks[m] = 2.0 * kPi * (m + 1) / L;
        for (std::size_t i = 0; i < t_grid.size(); ++i)
            out.predicted[m][i] = mu / D * phi_k(out.ks[m], t_grid[i], D);
    }
    const double stat_sd = std::sqrt(mu / (4.0 * D));  // per real component
    for (long s = 0; s < n_samples; ++s) {
        Rng rng(master_seed, "noisy_diffusion", static_cast<uint64_t>(s));
        for (int m = 0; m < n_modes; ++m) {
            const double theta = 2.0 * D * (1.0 - std::cos(out.ks[m]));
            double re = rng.normal(0.0, stat_sd), im = rng.normal(0.0, stat_sd);
            const double re0 = re, im0 = im;
            double t_prev = 0.0;
            for (std::size_t i = 0; i < t_grid.size(); ++i) {
                const double dt = t_grid[i] - t_prev;
                t_prev = t_grid[i];
                const double decay = std::exp(-theta * dt);
                const double kick = stat_sd * std::sqrt(1.0 - decay * decay);
                re = re * decay + rng.normal(0.0, kick);
                im = im * decay + rng.normal(0.0, kick);
                const double dre = re - re0, dim = im - im0;
                out.measured[m][i] += dre * dre + dim * dim;
            }
        }
    }
    for (auto& row : out.measured)
        for (auto& v : row) v /= static_cast<double>(n_samples);
    return out;
}

// Coupled-subsystem SFF model: K(t) = C t [(1 - w) + t w]^{L-1}.
enum class PrefactorMode { unit, match_late_ramp };

inline Curve sff_model_kw(const std::vector<double>& times, int L,
                          const std::function<double(double)>& w_of_t,
                          PrefactorMode mode = PrefactorMode::unit) {
    Curve c;
    c.times = times;
    c.values.resize(times.size());
    const double pref = mode == PrefactorMode::match_late_ramp ? 2.0 * L / kPi : 1.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const double w = w_of_t(t);
        if (w < 0.0 || w > 1.0) throw std::invalid_argument("sff_model_kw: w outside [0,1]");
        c.values[i] = pref * t * std::pow((1.0 - w) + t * w, L - 1);
    }
    return c;
}

// Crossover time of the model: the late solution of L t w(t) = 1 with the
// stretched-exponential w = A exp(-b sqrt(t)).
inline double t_star_stretched(int L, double A, double b) {
    const auto g = [&](double t) { return L * t * A * std::exp(-b * std::sqrt(t)) - 1.0; };
    double lo = 4.0 / (b * b);  // maximum of t e^{-b sqrt t}
    if (g(lo) < 0.0) throw std::runtime_error("t_star_stretched: no crossover (L too small)");
    double hi = lo;
    while (g(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace sffdl
