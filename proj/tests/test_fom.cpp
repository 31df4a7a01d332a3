#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nmrom/fom.hpp"

using namespace nmrom;

namespace {

// Independent scalar-loop evaluation of the semi-discrete right-hand side,
// written directly from the difference formulas. Kept free of any library
// indexing helpers beyond the documented flat layout.
Vec naive_rhs(const GridSpec& g, const Vec& u, double re) {
    const int nix = g.nx - 2, niy = g.ny - 2;
    const double hx = g.hx, hy = g.hy;
    auto val = [&](int comp, int i, int j) -> double {
        if (i < 1 || i > nix || j < 1 || j > niy) return 0.0;
        return u[comp * nix * niy + (j - 1) * nix + (i - 1)];
    };
    Vec f(2 * nix * niy);
    for (int comp = 0; comp < 2; ++comp)
        for (int j = 1; j <= niy; ++j)
            for (int i = 1; i <= nix; ++i) {
                const double uc = val(0, i, j), vc = val(1, i, j);
                const double c = val(comp, i, j);
                const double conv = uc * (c - val(comp, i - 1, j)) / hx +
                                    vc * (c - val(comp, i, j - 1)) / hy;
                const double lap =
                    (val(comp, i - 1, j) - 2 * c + val(comp, i + 1, j)) / (hx * hx) +
                    (val(comp, i, j - 1) - 2 * c + val(comp, i, j + 1)) / (hy * hy);
                f[comp * nix * niy + (j - 1) * nix + (i - 1)] = -conv + lap / re;
            }
    return f;
}

Vec random_state(const GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vec u(g.state_dim());
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = dist(rng);
    return u;
}

}  // namespace

TEST_CASE("grid indexing round-trips") {
    GridSpec g(7, 5);
    CHECK(g.state_dim() == 2 * 5 * 3);
    for (int idx = 0; idx < g.state_dim(); ++idx) {
        const auto n = g.unflat(idx);
        CHECK(g.flat(n.comp, n.i, n.j) == idx);
    }
    CHECK_THROWS_AS(GridSpec(2, 5), ConfigError);
}

TEST_CASE("initial state") {
    GridSpec g(5, 5);
    SUBCASE("mu = 0 gives zero") { CHECK(initial_state(g, 0.0).norm() == 0.0); }
    SUBCASE("peak of the sine bump") {
        // node (0.25, 0.25): sin(pi/2)^2 = 1
        const Vec u0 = initial_state(g, 1.1);
        CHECK(u0[g.flat(0, 1, 1)] == doctest::Approx(1.1).epsilon(1e-14));
        CHECK(u0[g.flat(1, 1, 1)] == doctest::Approx(1.1).epsilon(1e-14));
    }
    SUBCASE("matches brute-force formula on 60x60") {
        GridSpec big(60, 60);
        const double mu = 0.9;
        const Vec u0 = initial_state(big, mu);
        const double two_pi = 2.0 * std::numbers::pi;
        for (int j = 1; j <= big.interior_y(); ++j)
            for (int i = 1; i <= big.interior_x(); ++i) {
                const double x = i * big.hx, y = j * big.hy;
                const double want = (x <= 0.5 && y <= 0.5)
                                        ? mu * std::sin(two_pi * x) * std::sin(two_pi * y)
                                        : 0.0;
                CHECK(u0[big.flat(0, i, j)] == doctest::Approx(want).epsilon(1e-14));
                CHECK(u0[big.flat(1, i, j)] == doctest::Approx(want).epsilon(1e-14));
            }
    }
}

TEST_CASE("rhs") {
    FomConfig cfg;
    SUBCASE("zero state maps to zero") {
        GridSpec g(6, 6);
        CHECK(rhs(g, Vec::Zero(g.state_dim()), cfg).norm() == 0.0);
    }
    SUBCASE("single interior node, hand-evaluated stencil") {
        GridSpec g(3, 3);
        const double c = 0.7;
        Vec u(2);
        u << c, c;
        const Vec f = rhs(g, u, cfg);
        const double want = -4.0 * c * c - 16.0 * c / cfg.re;
        CHECK(f[0] == doctest::Approx(want).epsilon(1e-13));
        CHECK(f[1] == doctest::Approx(want).epsilon(1e-13));
    }
    SUBCASE("matches the naive stencil oracle") {
        GridSpec g(5, 5);
        const Vec u = random_state(g, 42);
        const Vec want = naive_rhs(g, u, cfg.re);
        CHECK((rhs(g, u, cfg) - want).lpNorm<Eigen::Infinity>() <= 1e-14);
    }
}

TEST_CASE("backward-Euler residual") {
    GridSpec g(5, 5);
    FomConfig cfg;
    cfg.t_final = 2.0;
    cfg.n_steps = 100;
    SUBCASE("zero states") {
        const Vec z = Vec::Zero(g.state_dim());
        CHECK(be_residual(g, z, z, cfg).norm() == 0.0);
    }
    SUBCASE("componentwise formula on random states") {
        const Vec a = random_state(g, 1), b = random_state(g, 2);
        const Vec want = a - b - cfg.dt() * naive_rhs(g, a, cfg.re);
        CHECK((be_residual(g, a, b, cfg) - want).lpNorm<Eigen::Infinity>() <= 1e-14);
    }
    SUBCASE("grid mismatch rejected") {
        const Vec a = random_state(g, 1);
        CHECK_THROWS_AS(be_residual(g, a, Vec::Zero(4), cfg), StructuralError);
    }
}

TEST_CASE("backward-Euler Jacobian vs central finite differences") {
    FomConfig cfg;
    cfg.t_final = 2.0;
    cfg.n_steps = 100;
    for (int trial = 0; trial < 20; ++trial) {
        GridSpec g(trial % 2 == 0 ? 4 : 6, trial % 2 == 0 ? 4 : 6);
        const Vec u = random_state(g, 100 + trial);
        const Vec u_prev = random_state(g, 200 + trial);
        const Mat jac = Mat(be_jacobian(g, u, cfg));
        const double h = 1e-6;
        Mat fd(g.state_dim(), g.state_dim());
        for (int c = 0; c < g.state_dim(); ++c) {
            Vec up = u, um = u;
            up[c] += h;
            um[c] -= h;
            fd.col(c) = (be_residual(g, up, u_prev, cfg) - be_residual(g, um, u_prev, cfg)) /
                        (2 * h);
        }
        CHECK((jac - fd).norm() / fd.norm() <= 1e-5);
    }
}

TEST_CASE("Jacobian sparsity: at most 10 nonzeros per row") {
    GridSpec g(8, 7);
    FomConfig cfg;
    const Vec u = random_state(g, 7);
    const SpMat jac = be_jacobian(g, u, cfg);
    std::vector<int> per_row(jac.rows(), 0);
    for (int c = 0; c < jac.outerSize(); ++c)
        for (SpMat::InnerIterator it(jac, c); it; ++it)
            if (it.value() != 0.0) ++per_row[it.row()];
    for (int n : per_row) CHECK(n <= 10);
}

TEST_CASE("solve_timestep") {
    GridSpec g(6, 6);
    FomConfig cfg;
    SUBCASE("zero is a fixed point") {
        const Vec u = solve_timestep(g, Vec::Zero(g.state_dim()), cfg);
        CHECK(u.norm() == 0.0);
    }
    SUBCASE("tiny time step reproduces the previous state") {
        cfg.t_final = 1e-10;
        cfg.n_steps = 1;
        const Vec u_prev = random_state(g, 3);
        int iters = 0;
        const Vec u = solve_timestep(g, u_prev, cfg, &iters);
        CHECK(iters <= 2);
        CHECK((u - u_prev).norm() <= 1e-8);
    }
    SUBCASE("non-convergence reported") {
        cfg.t_final = 1e6;  // absurd step
        cfg.n_steps = 1;
        cfg.newton_max_iter = 3;
        const Vec u_prev = random_state(g, 4);
        CHECK_THROWS_AS(solve_timestep(g, u_prev, cfg), NumericalError);
    }
}

TEST_CASE("run_fom") {
    SUBCASE("mu = 0 stays identically zero") {
        GridSpec g(8, 8);
        FomConfig cfg;
        cfg.mu = 0.0;
        cfg.n_steps = 5;
        const Trajectory traj = run_fom(g, cfg);
        REQUIRE(traj.states.size() == 6);
        for (const auto& u : traj.states) CHECK(u.norm() == 0.0);
    }
    SUBCASE("first-order self convergence in dt") {
        GridSpec g(12, 12);
        FomConfig cfg;
        cfg.mu = 1.0;
        cfg.re = 100.0;
        cfg.t_final = 0.5;
        auto terminal = [&](int n_steps) {
            FomConfig c = cfg;
            c.n_steps = n_steps;
            return run_fom(g, c).states.back();
        };
        const Vec a = terminal(25), b = terminal(50), c = terminal(100);
        const double ratio = (a - b).norm() / (b - c).norm();
        CHECK(ratio >= 1.5);
        CHECK(ratio <= 2.5);
    }
    SUBCASE("determinism") {
        GridSpec g(10, 10);
        FomConfig cfg;
        cfg.n_steps = 10;
        const Trajectory t1 = run_fom(g, cfg), t2 = run_fom(g, cfg);
        for (std::size_t n = 0; n < t1.states.size(); ++n)
            CHECK((t1.states[n] - t2.states[n]).lpNorm<Eigen::Infinity>() == 0.0);
    }
}
