// Full order model: semi-discretized 2D viscous Burgers' equation with
// backward-difference convection, central-difference diffusion, homogeneous
// Dirichlet boundary, and backward-Euler/Newton time stepping.
#pragma once
#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <vector>

#include "nmrom/grid.hpp"

namespace nmrom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

struct FomConfig {
    double mu = 1.0;
    double re = 10000.0;
    double t_final = 2.0;
    int n_steps = 1500;
    double newton_tol = 1e-10;
    int newton_max_iter = 25;

    double dt() const { return t_final / n_steps; }

    void validate() const {
        if (n_steps < 1) throw ConfigError("FomConfig: n_steps must be >= 1");
        if (!(t_final > 0.0)) throw ConfigError("FomConfig: t_final must be > 0");
        if (!(re > 0.0)) throw ConfigError("FomConfig: re must be > 0");
        if (!(newton_tol > 0.0)) throw ConfigError("FomConfig: newton_tol must be > 0");
    }
};

struct Trajectory {
    GridSpec grid;
    FomConfig config;
    std::vector<Vec> states;   // n_steps + 1 entries, states[n] at t = n*dt
    std::vector<int> newton_iters;  // per time step
    double wall_clock_seconds = 0.0;

    double time_at(int n) const { return n * config.dt(); }
};

// Initial condition: u = v = mu*sin(2*pi*x)*sin(2*pi*y) on [0,0.5]^2, 0 elsewhere.
Vec initial_state(const GridSpec& grid, double mu);

// Semi-discrete right-hand side f(u).
Vec rhs(const GridSpec& grid, const Vec& u, const FomConfig& cfg);

// Backward-Euler residual r = u_n - u_prev - dt*f(u_n).
Vec be_residual(const GridSpec& grid, const Vec& u_n, const Vec& u_prev,
                const FomConfig& cfg);

// Analytic d(rhs)/du as a sparse matrix.
SpMat rhs_jacobian(const GridSpec& grid, const Vec& u, const FomConfig& cfg);

// Analytic backward-Euler Jacobian I - dt*d(f)/du.
SpMat be_jacobian(const GridSpec& grid, const Vec& u, const FomConfig& cfg);

// One implicit step by Newton iteration starting from u_prev.
// Throws NumericalError if the residual norm does not drop below
// cfg.newton_tol within cfg.newton_max_iter iterations.
Vec solve_timestep(const GridSpec& grid, const Vec& u_prev, const FomConfig& cfg,
                   int* iters_out = nullptr);

// Full trajectory; wall clock covers the time loop only.
Trajectory run_fom(const GridSpec& grid, const FomConfig& cfg);

}  // namespace nmrom
