// Plain Gauss-Newton for small dense nonlinear least squares.
#pragma once
#include <Eigen/Core>
#include <functional>

#include "nmrom/errors.hpp"

namespace nmrom {

struct GaussNewtonConfig {
    double abs_tol = 1e-8;    // stop when ||r||_2 <= abs_tol
    double step_tol = 1e-10;  // stop when ||delta||_2 <= step_tol
    int max_iter = 20;
    // Optional cap on ||delta|| against rare blow-ups far from the solution.
    bool safeguard = true;
    double max_step_norm = 10.0;
};

struct GaussNewtonResult {
    Eigen::VectorXd solution;
    int iterations = 0;  // number of updates applied
    double residual_norm = 0.0;
    bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Iterates z <- z + delta with delta = argmin ||J delta + r||_2 via
// column-pivoted QR. Throws NumericalError when J loses column rank.
// A result with converged == false carries the best iterate found.
GaussNewtonResult gauss_newton(const ResidualFn& residual, const JacobianFn& jacobian,
                               const Eigen::VectorXd& start,
                               const GaussNewtonConfig& cfg);

}  // namespace nmrom
