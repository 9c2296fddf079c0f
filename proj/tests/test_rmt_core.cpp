#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "sffdl/bessel.hpp"
#include "sffdl/density.hpp"
#include "sffdl/gue.hpp"
#include "sffdl/kernels.hpp"
#include "sffdl/quadrature.hpp"
#include "sffdl/rng.hpp"
#include "sffdl/semicircle.hpp"
#include "sffdl/stats.hpp"

using namespace sffdl;

TEST_CASE("rng streams are deterministic and decorrelated") {
    Rng a(42, "test", 0), a2(42, "test", 0), b(42, "test", 1), c(42, "other", 0);
    std::vector<uint64_t> va, va2;
    for (int i = 0; i < 64; ++i) {
        va.push_back(a.next_u64());
        va2.push_back(a2.next_u64());
    }
    REQUIRE(va == va2);
    std::set<uint64_t> distinct(va.begin(), va.end());
    for (int i = 0; i < 64; ++i) {
        distinct.insert(b.next_u64());
        distinct.insert(c.next_u64());
    }
    REQUIRE(distinct.size() == 3 * 64);
}

TEST_CASE("rng normal moments") {
    Rng rng(7, "normal", 0);
    const long n = 200000;
    double s = 0, s2 = 0, s4 = 0;
    for (long i = 0; i < n; ++i) {
        const double x = rng.normal();
        s += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    REQUIRE(std::fabs(s / n) < 0.01);
    REQUIRE(s2 / n == Catch::Approx(1.0).margin(0.015));
    REQUIRE(s4 / n == Catch::Approx(3.0).margin(0.08));
}

TEST_CASE("semicircle density, cdf, moments") {
    REQUIRE(semicircle_density(0.0) == Catch::Approx(1.0 / kPi).epsilon(1e-14));
    REQUIRE(semicircle_density(2.0) == 0.0);
    REQUIRE(semicircle_density(2.5) == 0.0);
    REQUIRE(semicircle_cdf(-2.0) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(semicircle_cdf(0.0) == Catch::Approx(0.5).epsilon(1e-14));
    REQUIRE(semicircle_cdf(2.0) == Catch::Approx(1.0).epsilon(1e-14));
    // even moments are the Catalan numbers
    REQUIRE(semicircle_moment(0) == Catch::Approx(1.0));
    REQUIRE(semicircle_moment(2) == Catch::Approx(1.0));
    REQUIRE(semicircle_moment(4) == Catch::Approx(2.0));
    REQUIRE(semicircle_moment(6) == Catch::Approx(5.0));
    // quadrature agrees with the closed forms
    const double m2 = integrate(
        [](double x) { return x * x * semicircle_density(x); }, -2.0, 2.0, 1e-11);
    REQUIRE(m2 == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("semicircle sampler matches the cdf") {
    Rng rng(5, "sc_sample", 0);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_semicircle_energy(rng);
    REQUIRE(ks_pvalue(xs, [](double x) { return semicircle_cdf(x); }) > 1e-3);
}

TEST_CASE("bessel j1 reference values") {
    const std::pair<double, double> refs[] = {
        {0.05, 2.49921883137597042e-02},  {0.5, 2.42268457674873872e-01},
        {1.0, 4.40050585744933553e-01},   {2.0, 5.76724807756873403e-01},
        {5.0, -3.27579137591465286e-01},  {8.0, 2.34636346853914601e-01},
        {11.9, -2.28983249661924043e-01}, {12.0, -2.23447104490627602e-01},
        {12.1, -2.15748973376924863e-01}, {20.0, 6.68331241758502032e-02},
        {50.0, -9.75118281251750874e-02}, {200.0, -5.43045381823783480e-02}};
    for (const auto& [x, ref] : refs)
        REQUIRE(bessel_j1(x) == Catch::Approx(ref).epsilon(2e-11));
    REQUIRE(bessel_j1(-2.0) == Catch::Approx(-bessel_j1(2.0)).epsilon(1e-14));
    REQUIRE(j1_over_t_of_2t(0.0) == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(j1_over_t_of_2t(1e-9) == Catch::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("adaptive quadrature handles peaked integrands") {
    const double v = integrate(
        [](double x) { return std::exp(-1000.0 * x * x); }, -1.0, 1.0, 1e-12);
    REQUIRE(v == Catch::Approx(std::sqrt(kPi / 1000.0)).epsilon(1e-10));
    SemicircleRule rule(60);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * rule.x[i] * rule.x[i];
    REQUIRE(s == Catch::Approx(1.0).epsilon(1e-12));
    const double edge = integrate_sqrt_edges(
        [](double x) { return std::sqrt(4.0 - x * x); }, -2.0, 2.0, 1e-11);
    REQUIRE(edge == Catch::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("convolved level densities") {
    const auto& d2 = total_density(2);
    REQUIRE(d2.value(0.0) == Catch::Approx(8.0 / (3.0 * kPi * kPi)).epsilon(2e-7));
    const std::pair<double, double> refs[] = {{0.5, 0.2514551063},
                                              {1.0, 0.2132259408},
                                              {2.0, 0.1176844766},
                                              {3.0, 0.0347261016},
                                              {3.5, 0.0093203012}};
    for (const auto& [s, ref] : refs) REQUIRE(d2.value(s) == Catch::Approx(ref).epsilon(2e-6));
    REQUIRE(d2.value(-1.0) == Catch::Approx(d2.value(1.0)).epsilon(1e-12));
    REQUIRE(d2.value(4.2) == 0.0);
    REQUIRE(d2.trapezoid_integral() == Catch::Approx(1.0).epsilon(1e-12));

    const std::pair<int, double> zeros[] = {{3, 0.220001525717},
                                            {4, 0.193151278708},
                                            {8, 0.138815778274},
                                            {16, 0.098951381278}};
    for (const auto& [L, ref] : zeros)
        REQUIRE(total_density(L).value(0.0) == Catch::Approx(ref).epsilon(1e-5));
    REQUIRE(total_density(1).value(0.7) ==
            Catch::Approx(semicircle_density(0.7)).epsilon(1e-12));
}

TEST_CASE("pair moment densities") {
    // nu_1(s) = (s/2) nu_0(s): odd moment fixed by symmetry around s/2
    for (double s : {0.3, 1.1, 2.7}) {
        const double n0 = pair_moment_density(0, s);
        const double n1 = pair_moment_density(1, s);
        REQUIRE(n1 == Catch::Approx(0.5 * s * n0).epsilon(1e-8));
    }
    // nu_0 is the two-fold convolved density
    REQUIRE(pair_moment_density(0, 1.0) == Catch::Approx(0.2132259408).epsilon(1e-7));
    // PairTable interpolation error
    const PairTable tab([](double s) { return pair_moment_density(0, s); }, 1e-3);
    for (double s : {-3.7, -1.2, 0.0, 0.33333, 2.71828})
        REQUIRE(tab(s) == Catch::Approx(pair_moment_density(0, s)).margin(1e-9));
    REQUIRE(tab(4.5) == 0.0);
}

TEST_CASE("gue sampler statistics") {
    Rng rng(3, "gue", 0);
    const int n = 24;
    const GueSpec spec{static_cast<std::size_t>(n), 1.0 / n};
    double off_var = 0.0, diag_var = 0.0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        const auto h = sample_gue<double>(spec, rng);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const auto v = h[static_cast<std::size_t>(j) * n + i];
                // hermiticity
                const auto vt = h[static_cast<std::size_t>(i) * n + j];
                REQUIRE(std::abs(v - std::conj(vt)) < 1e-14);
                if (i == j)
                    diag_var += std::norm(v);
                else
                    off_var += std::norm(v);
            }
    }
    diag_var /= reps * n;
    off_var /= reps * n * (n - 1.0);
    REQUIRE(diag_var == Catch::Approx(1.0 / n).epsilon(0.05));
    REQUIRE(off_var == Catch::Approx(1.0 / n).epsilon(0.05));
}

TEST_CASE("single-matrix sff kernel") {
    const int N = 512;
    // plateau: the kernel saturates at N rho, integral N
    double plateau = integrate_sqrt_edges(
        [&](double e) { return k_window(e, 1e9, N); }, -2.0, 2.0, 1e-9);
    REQUIRE(plateau == Catch::Approx(static_cast<double>(N)).epsilon(1e-6));
    // early ramp: k1_approx has the full disconnected lobe at t ~ 0
    REQUIRE(k1_approx(N, 1e-6) == Catch::Approx(static_cast<double>(N) * N).epsilon(1e-5));
    // late: disconnected part is negligible and the ramp is linear in t
    const double t1 = 0.2 * 2.0 * kPi * N, t2 = 0.4 * 2.0 * kPi * N;
    const double k1 = k1_approx(N, t1), k2 = k1_approx(N, t2);
    REQUIRE(k2 > k1);
    REQUIRE(k1_approx(N, 1e7) == Catch::Approx(static_cast<double>(N)).epsilon(1e-4));
}

TEST_CASE("stats helpers") {
    // chi2 survival sanity: P(X > dof) ~ 0.5 at large dof, exact at dof=2
    REQUIRE(chi2_sf(2.0 * std::log(2.0), 2) == Catch::Approx(0.5).epsilon(1e-10));
    REQUIRE(chi2_sf(0.0, 5) == 1.0);
    REQUIRE(kolmogorov_q(0.5) > 0.95);
    REQUIRE(kolmogorov_q(2.0) < 1e-3);
    const LinFit f = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
    REQUIRE(f.a == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(f.b == Catch::Approx(2.0).margin(1e-12));
    const double x = minimize_scalar([](double v) { return (v - 0.7) * (v - 0.7); }, 0.0, 2.0);
    REQUIRE(x == Catch::Approx(0.7).margin(1e-5));
}
