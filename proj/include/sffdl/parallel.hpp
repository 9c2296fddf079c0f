#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "accum.hpp"

namespace sffdl {

inline int default_workers() {
    if (const char* env = std::getenv("SFFDL_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

using JobFn = std::function<std::vector<std::pair<std::string, std::vector<double>>>(long)>;

// Advance `set` from n_done to `target` by running one deterministic job per
// realization id. Jobs run on `workers` threads in chunks; results are merged
// strictly in id order, so worker count changes only float reassociation of
// nothing: each id's contribution is added exactly once, in order.
inline void run_ids_parallel(AccumSet& set, long target, int workers,
                             long chunk_per_worker, const JobFn& job,
                             const std::function<void(const AccumSet&)>& checkpoint = {},
                             long checkpoint_every = 1) {
    if (workers < 1) workers = 1;
    long since_checkpoint = 0;
    while (set.n_done < target) {
        const long chunk =
            std::min<long>(target - set.n_done, workers * chunk_per_worker);
        std::vector<std::vector<std::pair<std::string, std::vector<double>>>> results(chunk);
        if (workers == 1 || chunk == 1) {
            for (long i = 0; i < chunk; ++i) results[i] = job(set.n_done + i);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (long i = w; i < chunk; i += workers)
                        results[i] = job(set.n_done + i);
                });
            for (auto& th : pool) th.join();
        }
        for (long i = 0; i < chunk; ++i) set.add_realization(results[i]);
        since_checkpoint += chunk;
        if (checkpoint && (since_checkpoint >= checkpoint_every || set.n_done >= target)) {
            checkpoint(set);
            since_checkpoint = 0;
        }
    }
}

}  // namespace sffdl
