// Error metrics and timing for the benchmark harness.
#pragma once
#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "nmrom/fom.hpp"

namespace nmrom {

// max over n >= 1 of ||rom^n - fom^n||_2 / ||fom^n||_2. Steps with a zero
// FOM state are skipped. A failed ROM run is reported as 1.0 by the harness.
double max_rel_error(const std::vector<Vec>& rom_states, const Trajectory& fom);

// Wall-clock seconds of fn() on the monotonic clock.
double time_seconds(const std::function<void()>& fn);

// Median of k timed repetitions.
double median_time_seconds(const std::function<void()>& fn, int repetitions);

struct RomRunReport {
    std::string method;  // FOM | LS-LSPG | NM-LSPG | LS-LSPG-HR | NM-LSPG-HR
    double mu = 0.0;
    int n_latent = 0;
    int n_r = 0;   // 0 when not hyper-reduced
    int n_z = 0;
    double max_rel_error = 0.0;
    double wall_clock_seconds = 0.0;
    double fom_wall_clock_seconds = 0.0;
    double speedup = 0.0;  // fom_wall_clock / wall_clock
    bool failed = false;
    std::string failure_reason;
    double gn_iters_mean = 0.0;
    int gn_iters_max = 0;
};

}  // namespace nmrom
