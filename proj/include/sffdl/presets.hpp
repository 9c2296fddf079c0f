#pragma once

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "chain.hpp"
#include "curve.hpp"
#include "exact_diag.hpp"
#include "master_sim.hpp"

namespace sffdl {

// Canonical run sizes shared by the CLI, the acceptance tests, and the
// cache-warming tool, so that all three hit the same cached ensembles.
enum class Scale { smoke, desk, paper };

inline Scale parse_scale(const std::string& s) {
    if (s == "smoke") return Scale::smoke;
    if (s == "desk") return Scale::desk;
    if (s == "paper") return Scale::paper;
    throw std::invalid_argument("unknown scale: " + s);
}

inline std::filesystem::path cache_dir() {
    std::filesystem::path dir;
    if (const char* env = std::getenv("SFFDL_CACHE"))
        dir = env;
    else
        dir = "sffdl_cache";
    std::filesystem::create_directories(dir);
    return dir;
}

// ---- two-site random-matrix chain (exact diagonalization) ----

struct TwoSitePreset {
    TwoSiteEnsembleSpec spec;
    long n_realizations = 0;
    std::filesystem::path cache;
};

inline TwoSitePreset twosite_preset(Scale scale) {
    TwoSitePreset p;
    p.spec.lambda = 0.1;
    p.spec.master_seed = 20260824;
    switch (scale) {
        case Scale::smoke:
            p.spec.N = 16;
            p.spec.sff_times = logspace(0.5, 3e4, 60);
            p.spec.corr_times = linspace(0.0, 500.0, 11);
            p.n_realizations = 10;
            break;
        case Scale::desk:
            p.spec.N = 32;
            p.spec.sff_times = logspace(0.5, 3e4, 300);
            p.spec.corr_times = linspace(0.0, 500.0, 51);
            p.n_realizations = 200;
            break;
        case Scale::paper:
            p.spec.N = 64;
            p.spec.sff_times = logspace(0.5, 3e4, 300);
            p.spec.corr_times = linspace(0.0, 500.0, 51);
            p.n_realizations = 1000;
            break;
    }
    p.cache = cache_dir() / ("twosite_N" + std::to_string(p.spec.N) + "_" +
                             std::to_string(p.spec.hash()) + ".acc");
    return p;
}

// ---- master-equation ensemble ----

struct MasterPreset {
    SimSpec spec;
    std::vector<double> w_times;
    long n_trajectories = 0;
    std::filesystem::path cache;
};

inline std::vector<double> default_w_times() {
    std::vector<double> t;
    for (int i = 1; i <= 15; ++i) t.push_back(0.02 * i);  // dense early window
    for (double v : logspace(0.4, 60.0, 60)) t.push_back(v);
    return t;
}

inline MasterPreset master_preset(Scale scale) {
    MasterPreset p;
    p.spec.master_seed = 31415927;
    p.spec.t_max = 60.0;
    p.w_times = default_w_times();
    switch (scale) {
        case Scale::smoke:
            p.spec.L = 16;
            p.spec.t_max = 20.0;
            p.spec.observation_times = linspace(0.0, 20.0, 11);
            p.n_trajectories = 2000;
            break;
        case Scale::desk:
            p.spec.L = 32;
            p.spec.observation_times = linspace(0.0, 60.0, 31);
            p.n_trajectories = 200000;
            break;
        case Scale::paper:
            p.spec.L = 48;
            p.spec.observation_times = linspace(0.0, 60.0, 31);
            p.n_trajectories = 10000000;
            break;
    }
    p.spec.n_trajectories = p.n_trajectories;
    p.cache = cache_dir() / ("master_L" + std::to_string(p.spec.L) + "_" +
                             std::to_string(p.spec.hash("sim")) + ".acc");
    return p;
}

// ---- spin-chain ensembles ----

struct SpinPreset {
    SpinChainEnsembleSpec spec;
    long n_realizations = 0;
    std::filesystem::path cache;
};

inline SpinPreset spinchain_preset(Scale scale, int L, bool periodic) {
    SpinPreset p;
    p.spec.chain.L = L;
    p.spec.chain.periodic = periodic;
    p.spec.master_seed = 27182818;
    p.spec.times = logspace(0.05, 5000.0, scale == Scale::smoke ? 80 : 220);
    switch (scale) {
        case Scale::smoke: p.n_realizations = 20; break;
        case Scale::desk: p.n_realizations = 100; break;
        case Scale::paper: p.n_realizations = 500; break;
    }
    p.cache = cache_dir() / ("spin_L" + std::to_string(L) + (periodic ? "_pbc_" : "_obc_") +
                             std::to_string(p.spec.hash()) + ".acc");
    return p;
}

}  // namespace sffdl
