#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nmrom/metrics.hpp"

using namespace nmrom;

namespace {

Trajectory make_traj(int n, int steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Trajectory t;
    t.config.n_steps = steps;
    for (int k = 0; k <= steps; ++k) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = dist(rng);
        t.states.push_back(v);
    }
    return t;
}

}  // namespace

TEST_CASE("max_rel_error") {
    const Trajectory fom = make_traj(6, 4, 1);
    SUBCASE("exact reproduction gives zero") {
        CHECK(max_rel_error(fom.states, fom) == 0.0);
    }
    SUBCASE("uniform 1% inflation gives 0.01") {
        std::vector<Vec> rom;
        for (const auto& s : fom.states) rom.push_back(1.01 * s);
        CHECK(max_rel_error(rom, fom) == doctest::Approx(0.01).epsilon(1e-12));
    }
    SUBCASE("initial state is excluded") {
        std::vector<Vec> rom = fom.states;
        rom[0] = 100.0 * rom[0];
        CHECK(max_rel_error(rom, fom) == 0.0);
    }
    SUBCASE("it is a maximum over steps") {
        std::vector<Vec> rom = fom.states;
        rom[2] = 1.05 * rom[2];
        rom[4] = 1.02 * rom[4];
        CHECK(max_rel_error(rom, fom) == doctest::Approx(0.05).epsilon(1e-12));
    }
    SUBCASE("length or dimension mismatch raises") {
        std::vector<Vec> rom = fom.states;
        rom.pop_back();
        CHECK_THROWS_AS(max_rel_error(rom, fom), StructuralError);
        rom = fom.states;
        rom[1] = Vec::Zero(5);
        CHECK_THROWS_AS(max_rel_error(rom, fom), StructuralError);
    }
    SUBCASE("zero-norm FOM steps are skipped") {
        Trajectory zero = fom;
        for (auto& s : zero.states) s.setZero();
        std::vector<Vec> rom = zero.states;
        rom[1] = Vec::Ones(6);
        CHECK(max_rel_error(rom, zero) == 0.0);
    }
}

TEST_CASE("timing helpers") {
    SUBCASE("a no-op takes well under a millisecond") {
        CHECK(time_seconds([] {}) < 1e-3);
    }
    SUBCASE("median of repetitions is nonnegative and finite") {
        volatile double sink = 0.0;
        const double t = median_time_seconds(
            [&] {
                for (int i = 0; i < 1000; ++i) sink = sink + i;
            },
            5);
        CHECK(t >= 0.0);
        CHECK(t < 1.0);
    }
}
