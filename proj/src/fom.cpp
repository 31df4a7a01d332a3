#include "nmrom/fom.hpp"

#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <numbers>

namespace nmrom {

Vec initial_state(const GridSpec& grid, double mu) {
    Vec u0 = Vec::Zero(grid.state_dim());
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 1; j <= grid.interior_y(); ++j) {
        const double y = grid.y(j);
        for (int i = 1; i <= grid.interior_x(); ++i) {
            const double x = grid.x(i);
            if (x <= 0.5 && y <= 0.5) {
                const double val = mu * std::sin(two_pi * x) * std::sin(two_pi * y);
                u0[grid.flat(0, i, j)] = val;
                u0[grid.flat(1, i, j)] = val;
            }
        }
    }
    return u0;
}

namespace {

// Interior value or 0 on the boundary (Dirichlet eliminated).
inline double at(const GridSpec& g, const Vec& u, int comp, int i, int j) {
    if (i < 1 || i > g.interior_x() || j < 1 || j > g.interior_y()) return 0.0;
    return u[g.flat(comp, i, j)];
}

}  // namespace

Vec rhs(const GridSpec& grid, const Vec& u, const FomConfig& cfg) {
    if (u.size() != grid.state_dim())
        throw StructuralError("rhs: state size does not match grid");
    Vec f(grid.state_dim());
    const double hx = grid.hx, hy = grid.hy;
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    const double nu = 1.0 / cfg.re;
    for (int j = 1; j <= grid.interior_y(); ++j) {
        for (int i = 1; i <= grid.interior_x(); ++i) {
            const double uc = u[grid.flat(0, i, j)];
            const double vc = u[grid.flat(1, i, j)];
            for (int comp = 0; comp < 2; ++comp) {
                const double c = u[grid.flat(comp, i, j)];
                const double w = at(grid, u, comp, i - 1, j);
                const double e = at(grid, u, comp, i + 1, j);
                const double s = at(grid, u, comp, i, j - 1);
                const double n = at(grid, u, comp, i, j + 1);
                const double conv = uc * (c - w) / hx + vc * (c - s) / hy;
                const double diff = (w - 2.0 * c + e) * ihx2 + (s - 2.0 * c + n) * ihy2;
                f[grid.flat(comp, i, j)] = -conv + nu * diff;
            }
        }
    }
    return f;
}

Vec be_residual(const GridSpec& grid, const Vec& u_n, const Vec& u_prev,
                const FomConfig& cfg) {
    if (u_n.size() != u_prev.size() || u_n.size() != grid.state_dim())
        throw StructuralError("be_residual: state sizes do not match grid");
    return u_n - u_prev - cfg.dt() * rhs(grid, u_n, cfg);
}

SpMat rhs_jacobian(const GridSpec& grid, const Vec& u, const FomConfig& cfg) {
    if (u.size() != grid.state_dim())
        throw StructuralError("rhs_jacobian: state size does not match grid");
    const double hx = grid.hx, hy = grid.hy;
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    const double nu = 1.0 / cfg.re;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(grid.state_dim()) * 7);
    auto add = [&](int row, int comp, int i, int j, double val) {
        if (i < 1 || i > grid.interior_x() || j < 1 || j > grid.interior_y()) return;
        trips.emplace_back(row, grid.flat(comp, i, j), val);
    };
    for (int j = 1; j <= grid.interior_y(); ++j) {
        for (int i = 1; i <= grid.interior_x(); ++i) {
            const double uc = u[grid.flat(0, i, j)];
            const double vc = u[grid.flat(1, i, j)];
            for (int comp = 0; comp < 2; ++comp) {
                const int row = grid.flat(comp, i, j);
                const double c = u[grid.flat(comp, i, j)];
                const double w = at(grid, u, comp, i - 1, j);
                const double s = at(grid, u, comp, i, j - 1);
                // d/d(own center), convection advecting velocity part added below
                double diag = -uc / hx - vc / hy - 2.0 * nu * (ihx2 + ihy2);
                // advecting velocities: u*(c-w)/hx term differentiates w.r.t. uc,
                // v*(c-s)/hy w.r.t. vc; one of them may coincide with the diagonal
                add(row, 0, i, j, comp == 0 ? 0.0 : -(c - w) / hx);
                add(row, 1, i, j, comp == 1 ? 0.0 : -(c - s) / hy);
                if (comp == 0) diag += -(c - w) / hx;
                if (comp == 1) diag += -(c - s) / hy;
                add(row, comp, i, j, diag);
                add(row, comp, i - 1, j, uc / hx + nu * ihx2);
                add(row, comp, i + 1, j, nu * ihx2);
                add(row, comp, i, j - 1, vc / hy + nu * ihy2);
                add(row, comp, i, j + 1, nu * ihy2);
            }
        }
    }
    SpMat jac(grid.state_dim(), grid.state_dim());
    jac.setFromTriplets(trips.begin(), trips.end());
    jac.prune(0.0);
    return jac;
}

SpMat be_jacobian(const GridSpec& grid, const Vec& u, const FomConfig& cfg) {
    SpMat jac = rhs_jacobian(grid, u, cfg);
    jac *= -cfg.dt();
    SpMat eye(grid.state_dim(), grid.state_dim());
    eye.setIdentity();
    jac += eye;
    return jac;
}

Vec solve_timestep(const GridSpec& grid, const Vec& u_prev, const FomConfig& cfg,
                   int* iters_out) {
    Vec u = u_prev;
    Eigen::SparseLU<SpMat> lu;
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        Vec r = be_residual(grid, u, u_prev, cfg);
        const double rnorm = r.norm();
        if (rnorm <= cfg.newton_tol) {
            if (iters_out) *iters_out = it;
            return u;
        }
        SpMat jac = be_jacobian(grid, u, cfg);
        lu.compute(jac);
        if (lu.info() != Eigen::Success)
            throw NumericalError("solve_timestep: singular backward-Euler Jacobian");
        u -= lu.solve(r);
    }
    const double rnorm = be_residual(grid, u, u_prev, cfg).norm();
    if (rnorm <= cfg.newton_tol) {
        if (iters_out) *iters_out = cfg.newton_max_iter;
        return u;
    }
    throw NumericalError("solve_timestep: Newton did not converge, residual norm " +
                         std::to_string(rnorm));
}

Trajectory run_fom(const GridSpec& grid, const FomConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    traj.grid = grid;
    traj.config = cfg;
    traj.states.reserve(cfg.n_steps + 1);
    traj.newton_iters.reserve(cfg.n_steps);
    traj.states.push_back(initial_state(grid, cfg.mu));

    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 1; n <= cfg.n_steps; ++n) {
        int iters = 0;
        try {
            traj.states.push_back(solve_timestep(grid, traj.states.back(), cfg, &iters));
        } catch (const NumericalError& e) {
            throw NumericalError("run_fom: step " + std::to_string(n) + ": " + e.what());
        }
        traj.newton_iters.push_back(iters);
    }
    const auto t1 = std::chrono::steady_clock::now();
    traj.wall_clock_seconds = std::chrono::duration<double>(t1 - t0).count();
    return traj;
}

}  // namespace nmrom
