#include "nmrom/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace nmrom {

double max_rel_error(const std::vector<Vec>& rom_states, const Trajectory& fom) {
    if (rom_states.size() != fom.states.size())
        throw StructuralError("max_rel_error: step-count mismatch");
    double worst = 0.0;
    for (std::size_t n = 1; n < fom.states.size(); ++n) {
        if (rom_states[n].size() != fom.states[n].size())
            throw StructuralError("max_rel_error: state dimension mismatch");
        const double denom = fom.states[n].norm();
        if (denom > 0.0)
            worst = std::max(worst, (rom_states[n] - fom.states[n]).norm() / denom);
    }
    return worst;
}

double time_seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

double median_time_seconds(const std::function<void()>& fn, int repetitions) {
    if (repetitions < 1) throw ConfigError("median_time_seconds: repetitions < 1");
    std::vector<double> times(repetitions);
    for (auto& t : times) t = time_seconds(fn);
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

}  // namespace nmrom
