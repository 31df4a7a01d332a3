#include "nmrom/gauss_newton.hpp"

#include <Eigen/QR>
#include <limits>

namespace nmrom {

GaussNewtonResult gauss_newton(const ResidualFn& residual, const JacobianFn& jacobian,
                               const Eigen::VectorXd& start,
                               const GaussNewtonConfig& cfg) {
    if (cfg.max_iter < 1 || !(cfg.abs_tol > 0.0) || !(cfg.step_tol > 0.0))
        throw ConfigError("gauss_newton: invalid configuration");
    GaussNewtonResult res;
    res.solution = start;
    Eigen::VectorXd best = start;
    double best_norm = std::numeric_limits<double>::infinity();

    for (int it = 0; it <= cfg.max_iter; ++it) {
        const Eigen::VectorXd r = residual(res.solution);
        const double rnorm = r.norm();
        if (rnorm < best_norm) {
            best_norm = rnorm;
            best = res.solution;
        }
        if (rnorm <= cfg.abs_tol) {
            res.converged = true;
            break;
        }
        if (it == cfg.max_iter) break;

        const Eigen::MatrixXd jac = jacobian(res.solution);
        if (jac.rows() < jac.cols())
            throw StructuralError("gauss_newton: underdetermined residual");
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
        if (qr.rank() < jac.cols())
            throw NumericalError("gauss_newton: rank-deficient Jacobian");
        Eigen::VectorXd delta = qr.solve(-r);
        if (cfg.safeguard && delta.norm() > cfg.max_step_norm)
            delta *= cfg.max_step_norm / delta.norm();
        if (delta.norm() <= cfg.step_tol) {
            res.converged = true;
            break;
        }
        res.solution += delta;
        ++res.iterations;
    }
    if (!res.converged) res.solution = best;
    res.residual_norm = residual(res.solution).norm();
    return res;
}

}  // namespace nmrom
