// Pre-computes the cached ensembles used by the acceptance tests and the CLI.
// Usage: warm_cache <twosite|master|spin> <smoke|desk|paper>
// Resumable: progress is checkpointed, rerunning continues where it left off.

#include <cstdio>
#include <cstring>
#include <string>

#include "sffdl/exact_diag.hpp"
#include "sffdl/master_obs.hpp"
#include "sffdl/presets.hpp"

using namespace sffdl;

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: warm_cache <twosite|master|spin> <smoke|desk|paper>\n");
        return 2;
    }
    const std::string what = argv[1];
    const Scale scale = parse_scale(argv[2]);
    const int workers = default_workers();
    if (what == "twosite") {
        auto p = twosite_preset(scale);
        std::printf("twosite N=%d lambda=%g target=%ld cache=%s\n", p.spec.N, p.spec.lambda,
                    p.n_realizations, p.cache.c_str());
        run_twosite_ensemble(p.spec, p.n_realizations, p.cache, workers, 5, [](long id) {
            if (id % 5 == 0) { std::printf("  realization %ld\n", id); std::fflush(stdout); }
        });
    } else if (what == "master") {
        auto p = master_preset(scale);
        std::printf("master L=%d t_max=%g target=%ld cache=%s\n", p.spec.L, p.spec.t_max,
                    p.n_trajectories, p.cache.c_str());
        run_master_ensemble(p.spec, p.w_times, p.n_trajectories, p.cache, workers, 20000,
                            [](long id) {
                                if (id % 100000 == 0) {
                                    std::printf("  trajectory %ld\n", id);
                                    std::fflush(stdout);
                                }
                            });
    } else if (what == "spin") {
        for (int L : {8, 10, 12})
            for (bool pbc : {false, true}) {
                auto p = spinchain_preset(scale, L, pbc);
                std::printf("spin L=%d %s target=%ld\n", L, pbc ? "pbc" : "obc",
                            p.n_realizations);
                std::fflush(stdout);
                run_spinchain_ensemble(p.spec, p.n_realizations, p.cache, workers);
            }
    } else {
        std::fprintf(stderr, "unknown ensemble: %s\n", what.c_str());
        return 2;
    }
    std::printf("done\n");
    return 0;
}
