#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/QR>
#include <random>

#include "nmrom/gauss_newton.hpp"

using namespace nmrom;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("scalar linear residual converges in one update") {
    const auto res = gauss_newton(
        [](const VectorXd& z) { return z; },
        [](const VectorXd& z) { return MatrixXd::Identity(z.size(), z.size()); },
        VectorXd::Ones(1), GaussNewtonConfig{});
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(std::abs(res.solution[0]) <= 1e-12);
}

TEST_CASE("affine residuals are solved exactly in one iteration") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 25; ++trial) {
        const int m = 6 + static_cast<int>(rng() % 10);
        const int n = 2 + static_cast<int>(rng() % 4);
        MatrixXd a(m, n);
        VectorXd b(m), start(n);
        for (int r = 0; r < m; ++r) b[r] = dist(rng);
        for (int c = 0; c < n; ++c) {
            start[c] = dist(rng);
            for (int r = 0; r < m; ++r) a(r, c) = dist(rng);
        }
        GaussNewtonConfig cfg;
        cfg.abs_tol = 1e-14;  // force the step-size criterion
        cfg.safeguard = false;
        const auto res = gauss_newton(
            [&](const VectorXd& z) { return VectorXd(a * z - b); },
            [&](const VectorXd&) { return a; }, start, cfg);
        CHECK(res.converged);
        CHECK(res.iterations == 1);
        const VectorXd exact = a.colPivHouseholderQr().solve(b);
        CHECK((res.solution - exact).norm() <= 1e-10);
    }
}

TEST_CASE("Rosenbrock residual from the classic start") {
    const auto residual = [](const VectorXd& z) {
        VectorXd r(2);
        r << 1.0 - z[0], 10.0 * (z[1] - z[0] * z[0]);
        return r;
    };
    const auto jacobian = [](const VectorXd& z) {
        MatrixXd j(2, 2);
        j << -1.0, 0.0, -20.0 * z[0], 10.0;
        return j;
    };
    VectorXd start(2);
    start << -1.2, 1.0;
    GaussNewtonConfig cfg;
    cfg.max_iter = 50;
    cfg.abs_tol = 1e-10;
    const auto res = gauss_newton(residual, jacobian, start, cfg);
    CHECK(res.converged);
    CHECK(res.iterations <= 50);
    CHECK((res.solution - VectorXd::Ones(2)).norm() <= 1e-6);
    CHECK(residual(res.solution).norm() <= 1e-8);
}

TEST_CASE("rank-deficient Jacobian raises") {
    CHECK_THROWS_AS(gauss_newton([](const VectorXd& z) { return VectorXd(z.head(2)); },
                                 [](const VectorXd&) { return MatrixXd::Zero(2, 2); },
                                 VectorXd::Ones(2), GaussNewtonConfig{}),
                    NumericalError);
}

TEST_CASE("non-convergence carries the best iterate") {
    // r(z) = e^{-z}: every Gauss-Newton step is exactly +1, so neither
    // tolerance can trigger within the iteration cap.
    GaussNewtonConfig cfg;
    cfg.abs_tol = 1e-16;
    cfg.step_tol = 1e-16;
    cfg.max_iter = 5;
    const auto res = gauss_newton(
        [](const VectorXd& z) {
            VectorXd r(1);
            r << std::exp(-z[0]);
            return r;
        },
        [](const VectorXd& z) {
            MatrixXd j(1, 1);
            j << -std::exp(-z[0]);
            return j;
        },
        VectorXd::Zero(1), cfg);
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 5);
    CHECK(res.solution[0] == doctest::Approx(5.0));
    CHECK(res.residual_norm == doctest::Approx(std::exp(-5.0)));
}

TEST_CASE("step safeguard caps the update norm") {
    GaussNewtonConfig cfg;
    cfg.max_iter = 1;
    cfg.max_step_norm = 0.5;
    const auto res = gauss_newton(
        [](const VectorXd& z) { return VectorXd(z.array() - 100.0); },
        [](const VectorXd&) { return MatrixXd::Identity(1, 1); }, VectorXd::Zero(1),
        cfg);
    CHECK(std::abs(res.solution[0]) <= 0.5 + 1e-12);
}
