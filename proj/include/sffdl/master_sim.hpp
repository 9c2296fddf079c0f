#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "accum.hpp"
#include "density.hpp"
#include "rng.hpp"
#include "semicircle.hpp"

namespace sffdl {

// Everything here works in the rescaled, dimensionless time tau = lambda^2 t:
// rates are computed with lambda = 1, so one run serves every coupling.

// gamma(s) = 2 pi rho_tot2(s) on a dense cubic-interpolated table; called once
// per event and per rate refresh.
inline const PairTable& gamma_table() {
    static const PairTable table(
        [](double s) { return 2.0 * kPi * total_density(2).value(s); }, 1e-3);
    return table;
}

struct EnergyConfig {
    std::vector<double> energies;    // eps_n, each in [-2, 2]
    std::vector<double> pair_rates;  // gamma(eps_m + eps_{m+1}) per bond
    double total_rate = 0.0;
    bool periodic = false;

    int n_bonds() const {
        return periodic ? static_cast<int>(energies.size())
                        : static_cast<int>(energies.size()) - 1;
    }

    int bond_site(int m) const { return m; }  // bond m couples sites m and m+1 (mod L)

    void refresh_rates() {
        const int nb = n_bonds();
        const auto L = static_cast<int>(energies.size());
        pair_rates.resize(nb);
        total_rate = 0.0;
        for (int m = 0; m < nb; ++m) {
            pair_rates[m] = gamma_table()(energies[m] + energies[(m + 1) % L]);
            total_rate += pair_rates[m];
        }
    }
};

inline EnergyConfig init_config(int L, Rng& rng, bool periodic = false) {
    if (L < 2) throw std::invalid_argument("init_config: L >= 2 required");
    EnergyConfig c;
    c.periodic = periodic;
    c.energies.resize(L);
    for (auto& e : c.energies) e = sample_semicircle_energy(rng);
    c.refresh_rates();
    return c;
}

inline int select_bond(const EnergyConfig& c, Rng& rng) {
    if (!(c.total_rate > 0.0))
        throw std::runtime_error("select_bond: vanishing total rate");
    const double u = rng.uniform() * c.total_rate;
    double acc = 0.0;
    const int nb = c.n_bonds();
    for (int m = 0; m < nb; ++m) {
        acc += c.pair_rates[m];
        if (u < acc) return m;
    }
    return nb - 1;  // guard against roundoff at u ~ total_rate
}

inline double sample_waiting_time(const EnergyConfig& c, Rng& rng) {
    if (!(c.total_rate > 0.0))
        throw std::runtime_error("sample_waiting_time: vanishing total rate");
    return rng.exponential(c.total_rate);
}

// Draw eps'_m from density prop. to rho(x) rho(s - x); the pair sum s is
// conserved exactly. Rejection with a flat envelope at the exact maximum
// rho(s/2)^2 (the density is log-concave, so the mode is at x = s/2).
inline std::pair<double, double> sample_pair_update(double e1, double e2, Rng& rng) {
    const double s = e1 + e2;
    const double lo = std::max(-2.0, s - 2.0), hi = std::min(2.0, s + 2.0);
    if (!(hi > lo)) throw std::runtime_error("sample_pair_update: empty support");
    const double fmax = semicircle_density(0.5 * s);
    const double cap = fmax * fmax;
    for (;;) {
        const double x = rng.uniform(lo, hi);
        const double f = semicircle_density(x) * semicircle_density(s - x);
        if (rng.uniform() * cap < f) return {x, s - x};
    }
}

struct SimSpec {
    int L = 48;
    bool periodic = false;
    double t_max = 80.0;                 // rescaled time
    std::vector<double> observation_times;
    long n_trajectories = 1000;
    uint64_t master_seed = 1;

    uint64_t hash(const std::string& tag) const {
        KeyHasher h;
        h << tag << static_cast<int64_t>(L) << static_cast<int64_t>(periodic ? 1 : 0)
          << t_max << observation_times << static_cast<int64_t>(n_trajectories)
          << master_seed;
        return h.h;
    }
};

struct EventRecord {
    double tau;
    int bond;
    double before[2], after[2];
};

struct TrajectoryLog {
    std::vector<EventRecord> events;
    std::vector<double> first_exchange_time;  // per bond, +inf if none
    std::vector<std::vector<double>> snapshots;
    std::vector<double> initial;
    long n_events = 0;
};

// Core Gillespie loop. `snap(i, energies)` fires once per observation time
// (snapshot-at-crossing: the state after the last event at tau <= t_obs);
// `first_exchange(bond, tau)` fires on a bond's first event.
template <class SnapFn, class FirstFn>
void run_trajectory_core(const SimSpec& spec, EnergyConfig& c, Rng& rng, SnapFn&& snap,
                         FirstFn&& first_exchange, long* event_count = nullptr,
                         std::vector<EventRecord>* events = nullptr) {
    const auto L = static_cast<int>(c.energies.size());
    const int nb = c.n_bonds();
    const auto& obs = spec.observation_times;
    std::size_t obs_idx = 0;
    while (obs_idx < obs.size() && obs[obs_idx] <= 0.0) {
        snap(obs_idx, c.energies);
        ++obs_idx;
    }
    std::vector<char> touched(nb, 0);
    double tau = 0.0;
    long n_ev = 0;
    long refresh_countdown = 1 << 12;
    for (;;) {
        const double dt = sample_waiting_time(c, rng);
        const double tau_next = tau + dt;
        while (obs_idx < obs.size() && obs[obs_idx] < tau_next) {
            if (obs[obs_idx] <= spec.t_max) snap(obs_idx, c.energies);
            ++obs_idx;
        }
        if (tau_next >= spec.t_max) break;
        const int m = select_bond(c, rng);
        const int i = m, j = (m + 1) % L;
        if (!touched[m]) {
            touched[m] = 1;
            first_exchange(m, tau_next);
        }
        const double e1 = c.energies[i], e2 = c.energies[j];
        const auto [n1, n2] = sample_pair_update(e1, e2, rng);
        if (events) events->push_back({tau_next, m, {e1, e2}, {n1, n2}});
        c.energies[i] = n1;
        c.energies[j] = n2;
        // refresh the rates of the bonds sharing a site with m
        const int lo_b = c.periodic ? (m - 1 + nb) % nb : std::max(0, m - 1);
        const int hi_b = c.periodic ? (m + 1) % nb : std::min(nb - 1, m + 1);
        for (int b : {lo_b, m, hi_b}) {  // duplicates are harmless (idempotent)
            const double old = c.pair_rates[b];
            const double now = gamma_table()(c.energies[b] + c.energies[(b + 1) % L]);
            c.pair_rates[b] = now;
            c.total_rate += now - old;
        }
        tau = tau_next;
        ++n_ev;
        if (--refresh_countdown == 0) {  // keep the cached sum from drifting
            refresh_countdown = 1 << 12;
            double s = 0.0;
            for (int b = 0; b < nb; ++b) s += c.pair_rates[b];
            c.total_rate = s;
        }
    }
    if (event_count) *event_count = n_ev;
}

inline TrajectoryLog run_trajectory(const SimSpec& spec, uint64_t trajectory_id) {
    Rng rng(spec.master_seed, "master_sim", trajectory_id);
    EnergyConfig c = init_config(spec.L, rng, spec.periodic);
    TrajectoryLog log;
    log.initial = c.energies;
    log.first_exchange_time.assign(c.n_bonds(), std::numeric_limits<double>::infinity());
    log.snapshots.resize(spec.observation_times.size());
    run_trajectory_core(
        spec, c, rng,
        [&](std::size_t i, const std::vector<double>& e) { log.snapshots[i] = e; },
        [&](int bond, double tau) { log.first_exchange_time[bond] = tau; },
        &log.n_events, &log.events);
    return log;
}

}  // namespace sffdl
