#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "accum.hpp"
#include "curve.hpp"
#include "master_sim.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace sffdl {

// Ensemble observables of the master-equation simulation, accumulated with
// checkpoint/resume:
//   "C0x": eps_center(0) * eps_n(t) on observation_times x sites (row-major t, n)
//   "w":   indicator {no event on the central bond up to t} on w_times
//   "n_events": events per trajectory (length-1 vector)
struct MasterEnsembleResult {
    AccumSet set;
    std::vector<double> obs_times, w_times;
    int L = 0;

    long n() const { return set.n_done; }

    double c0x(std::size_t ti, int site) const {
        return set.accums.at("C0x").mean(ti * L + site, set.n_done);
    }

    double c0x_stderr(std::size_t ti, int site) const {
        return set.accums.at("C0x").stderr_of_mean(ti * L + site, set.n_done);
    }

    Curve w_curve() const {
        Curve c;
        c.times = w_times;
        c.n_realizations = set.n_done;
        const auto& acc = set.accums.at("w");
        for (std::size_t i = 0; i < w_times.size(); ++i) {
            c.values.push_back(acc.mean(i, set.n_done));
            c.stderrs.push_back(acc.stderr_of_mean(i, set.n_done));
        }
        return c;
    }

    double mean_events() const { return set.accums.at("n_events").mean(0, set.n_done); }
};

inline MasterEnsembleResult run_master_ensemble(
    const SimSpec& spec, const std::vector<double>& w_times, long n_target,
    const std::filesystem::path& cache_path = {}, int n_workers = 1,
    long checkpoint_every = 20000, const std::function<void(long)>& progress = {}) {
    MasterEnsembleResult res;
    res.obs_times = spec.observation_times;
    res.w_times = w_times;
    res.L = spec.L;
    KeyHasher kh;
    kh << std::string("master_ensemble") << spec.hash("sim") << w_times;
    res.set.key_hash = kh.h;
    if (!cache_path.empty()) {
        if (auto loaded = AccumSet::load(cache_path, res.set.key_hash)) res.set = *loaded;
    }
    const int L = spec.L;
    const int center = L / 2;
    const int center_bond = (spec.periodic ? L : L - 1) / 2;
    const std::size_t n_obs = spec.observation_times.size();
    const JobFn job = [&](long id) {
        Rng rng(spec.master_seed, "master_sim", static_cast<uint64_t>(id));
        EnergyConfig c = init_config(L, rng, spec.periodic);
        const double e0 = c.energies[center];
        std::vector<double> c0x(n_obs * L, 0.0), wvec(w_times.size()), ev(1);
        double first_center = std::numeric_limits<double>::infinity();
        long n_ev = 0;
        run_trajectory_core(
            spec, c, rng,
            [&](std::size_t i, const std::vector<double>& e) {
                double* row = &c0x[i * L];
                for (int n = 0; n < L; ++n) row[n] = e0 * e[n];
            },
            [&](int bond, double tau) {
                if (bond == center_bond) first_center = tau;
            },
            &n_ev);
        for (std::size_t i = 0; i < w_times.size(); ++i)
            wvec[i] = first_center > w_times[i] ? 1.0 : 0.0;
        ev[0] = static_cast<double>(n_ev);
        if (progress) progress(id);
        return std::vector<std::pair<std::string, std::vector<double>>>{
            {"C0x", std::move(c0x)}, {"w", std::move(wvec)}, {"n_events", std::move(ev)}};
    };
    run_ids_parallel(res.set, n_target, n_workers, 256, job,
                     cache_path.empty()
                         ? std::function<void(const AccumSet&)>{}
                         : [&](const AccumSet& s) { s.save(cache_path); },
                     checkpoint_every);
    return res;
}

// Center-site marginal samples at each observation time; used for the
// stationarity test (one independent sample per trajectory).
inline std::vector<std::vector<double>> run_stationarity_samples(const SimSpec& spec,
                                                                 long n_traj) {
    const int center = spec.L / 2;
    std::vector<std::vector<double>> samples(spec.observation_times.size());
    for (auto& s : samples) s.reserve(n_traj);
    for (long id = 0; id < n_traj; ++id) {
        Rng rng(spec.master_seed, "stationarity", static_cast<uint64_t>(id));
        EnergyConfig c = init_config(spec.L, rng, spec.periodic);
        run_trajectory_core(
            spec, c, rng,
            [&](std::size_t i, const std::vector<double>& e) {
                samples[i].push_back(e[center]);
            },
            [](int, double) {});
    }
    return samples;
}

// Least-squares fit of sqrt(t) C_0x(t) to the diffusive Gaussian
// (4 pi D)^{-1/2} exp(-x^2 / 4 D t), pooled over |x| < L/4 and t in window.
struct CollapseFit {
    double D = 0.0;
    double max_residual = 0.0;  // max |data - fit| relative to the fit peak at that t
};

inline CollapseFit collapse_check(const MasterEnsembleResult& res, double t_lo = 10.0,
                                  double t_hi = std::numeric_limits<double>::infinity()) {
    const int L = res.L;
    const int center = L / 2;
    struct Pt {
        double t, x, y;
    };
    std::vector<Pt> pts;
    for (std::size_t i = 0; i < res.obs_times.size(); ++i) {
        const double t = res.obs_times[i];
        if (t <= t_lo || t > t_hi) continue;
        for (int n = 0; n < L; ++n) {
            const double x = n - center;
            if (std::fabs(x) >= L / 4.0) continue;
            pts.push_back({t, x, std::sqrt(t) * res.c0x(i, n)});
        }
    }
    if (pts.size() < 8) throw std::runtime_error("collapse_check: insufficient data");
    const auto sse = [&](double D) {
        double s = 0.0;
        for (const auto& p : pts) {
            const double m = std::exp(-p.x * p.x / (4.0 * D * p.t)) / std::sqrt(4.0 * kPi * D);
            s += (p.y - m) * (p.y - m);
        }
        return s;
    };
    CollapseFit fit;
    fit.D = minimize_scalar(sse, 0.2, 1.5, 1e-7);
    for (const auto& p : pts) {
        const double m =
            std::exp(-p.x * p.x / (4.0 * fit.D * p.t)) / std::sqrt(4.0 * kPi * fit.D);
        const double peak = 1.0 / std::sqrt(4.0 * kPi * fit.D);
        fit.max_residual = std::max(fit.max_residual, std::fabs(p.y - m) / peak);
    }
    return fit;
}

// Variance estimator D(t) = (1/2t) sum_n (n - center)^2 <eps_n(t) eps_center(0)>.
inline Curve d_of_t(const MasterEnsembleResult& res) {
    const int L = res.L, center = L / 2;
    Curve c;
    c.n_realizations = res.n();
    for (std::size_t i = 0; i < res.obs_times.size(); ++i) {
        const double t = res.obs_times[i];
        if (t <= 0.0) continue;
        double s = 0.0, serr = 0.0;
        for (int n = 0; n < L; ++n) {
            const double x = n - center;
            s += x * x * res.c0x(i, n);
            serr += x * x * x * x * res.c0x_stderr(i, n) * res.c0x_stderr(i, n);
        }
        c.times.push_back(t);
        c.values.push_back(s / (2.0 * t));
        c.stderrs.push_back(std::sqrt(serr) / (2.0 * t));
    }
    return c;
}

// Fit of the late-time stretched-exponential form w ~ A exp(-b sqrt(tau)),
// plus the running exponent alpha(t) = d ln(-ln w) / d ln t.
struct WLateFit {
    double A = 0.0, b = 0.0;
    Curve alpha;
    double window_lo = 0.0, window_hi = 0.0;
    bool ok = false;
};

inline WLateFit fit_w_late(const Curve& w, double t_lo = 15.0, double floor_mult = 10.0) {
    WLateFit out;
    const double floor =
        w.n_realizations > 0 ? floor_mult / static_cast<double>(w.n_realizations) : 0.0;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.times[i] < t_lo) continue;
        if (!(w.values[i] > floor && w.values[i] < 1.0)) continue;
        xs.push_back(std::sqrt(w.times[i]));
        ys.push_back(std::log(w.values[i]));
    }
    if (xs.size() >= 4) {
        const LinFit f = linear_fit(xs, ys);
        out.A = std::exp(f.a);
        out.b = -f.b;
        out.window_lo = xs.front() * xs.front();
        out.window_hi = xs.back() * xs.back();
        out.ok = true;
    }
    // centered differences on ln t
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const double w0 = w.values[i - 1], w2 = w.values[i + 1];
        if (!(w0 > floor && w0 < 1.0 && w2 > floor && w2 < 1.0)) continue;
        if (!(w.times[i - 1] > 0.0)) continue;
        const double num = std::log(-std::log(w2)) - std::log(-std::log(w0));
        const double den = std::log(w.times[i + 1]) - std::log(w.times[i - 1]);
        out.alpha.times.push_back(w.times[i]);
        out.alpha.values.push_back(num / den);
    }
    out.alpha.n_realizations = w.n_realizations;
    return out;
}

// Short-time exchange rate: fit -ln w(t) = rate * t through the origin.
inline double w_early_rate(const Curve& w, double t_max_fit = 0.25) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = w.times[i];
        if (t <= 0.0 || t > t_max_fit || !(w.values[i] > 0.0 && w.values[i] < 1.0)) continue;
        num += -std::log(w.values[i]) * t;
        den += t * t;
    }
    if (den == 0.0) throw std::runtime_error("w_early_rate: no usable points");
    return num / den;
}

}  // namespace sffdl
