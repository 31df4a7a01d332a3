// Online ROM solvers without hyper-reduction: NM-LSPG on the decoder manifold
// and the linear-subspace baseline LS-LSPG, both closing the over-determined
// reduced system by Gauss-Newton on the backward-Euler residual.
#pragma once
#include <vector>

#include "nmrom/autoencoder.hpp"
#include "nmrom/fom.hpp"
#include "nmrom/gauss_newton.hpp"
#include "nmrom/pod.hpp"

namespace nmrom {

struct RomTrajectory {
    std::vector<Vec> latent_states;  // n_steps + 1 entries
    std::vector<int> gn_iterations;  // per time step
    double wall_clock_seconds = 0.0;
};

// g(z_n) - g(z_prev) - dt*f(u_ref + g(z_n))
Vec nm_residual(const GridSpec& grid, const MaskedAutoencoder& model,
                const Vec& u_ref, const Vec& z_n, const Vec& z_prev,
                const FomConfig& cfg);

// (I - dt*df/du)|_{u_ref+g(z_n)} * J_g(z_n), N x n_s
Mat nm_residual_jacobian(const GridSpec& grid, const MaskedAutoencoder& model,
                         const Vec& u_ref, const Vec& z_n, const FomConfig& cfg);

// Warm-started Gauss-Newton stepping on the manifold residual, starting from
// z^0 = E(u^0 - u_ref). Throws NumericalError with the failing step index.
RomTrajectory run_nm_lspg(const GridSpec& grid, const MaskedAutoencoder& model,
                          const Vec& u_ref, const FomConfig& cfg,
                          const GaussNewtonConfig& gn);

// Same pipeline with g(z) = Phi*z and constant Jacobian, z^0 = Phi^T(u^0 - u_ref).
RomTrajectory run_ls_lspg(const GridSpec& grid, const ReducedBasis& basis,
                          const Vec& u_ref, const FomConfig& cfg,
                          const GaussNewtonConfig& gn);

// Reconstructed full states u_ref + g(z_n).
std::vector<Vec> decode_trajectory(const MaskedAutoencoder& model, const Vec& u_ref,
                                   const RomTrajectory& rom);
std::vector<Vec> decode_trajectory(const ReducedBasis& basis, const Vec& u_ref,
                                   const RomTrajectory& rom);

}  // namespace nmrom
