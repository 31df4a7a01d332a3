#include "nmrom/lspg.hpp"

#include <chrono>

namespace nmrom {

Vec nm_residual(const GridSpec& grid, const MaskedAutoencoder& model,
                const Vec& u_ref, const Vec& z_n, const Vec& z_prev,
                const FomConfig& cfg) {
    if (u_ref.size() != grid.state_dim() || model.n_full != grid.state_dim())
        throw StructuralError("nm_residual: model/grid dimension mismatch");
    const Vec g_n = decode(model, z_n);
    const Vec g_prev = decode(model, z_prev);
    return g_n - g_prev - cfg.dt() * rhs(grid, u_ref + g_n, cfg);
}

Mat nm_residual_jacobian(const GridSpec& grid, const MaskedAutoencoder& model,
                         const Vec& u_ref, const Vec& z_n, const FomConfig& cfg) {
    const Vec u = u_ref + decode(model, z_n);
    const Mat jac_g = decoder_jacobian(model, z_n);
    return be_jacobian(grid, u, cfg) * jac_g;
}

namespace {

template <class ResidualAt, class JacobianAt>
RomTrajectory run_lspg_loop(const Vec& z0, int n_steps, const GaussNewtonConfig& gn,
                            ResidualAt&& residual_at, JacobianAt&& jacobian_at) {
    RomTrajectory rom;
    rom.latent_states.reserve(n_steps + 1);
    rom.gn_iterations.reserve(n_steps);
    rom.latent_states.push_back(z0);

    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 1; n <= n_steps; ++n) {
        const Vec& z_prev = rom.latent_states.back();
        GaussNewtonResult res;
        try {
            res = gauss_newton(
                [&](const Vec& z) { return residual_at(z, z_prev); },
                [&](const Vec& z) { return jacobian_at(z); }, z_prev, gn);
        } catch (const NumericalError& e) {
            throw NumericalError("lspg: step " + std::to_string(n) + ": " + e.what());
        }
        if (!res.converged)
            throw NumericalError("lspg: step " + std::to_string(n) +
                                 ": Gauss-Newton did not converge, residual norm " +
                                 std::to_string(res.residual_norm));
        rom.latent_states.push_back(res.solution);
        rom.gn_iterations.push_back(res.iterations);
    }
    const auto t1 = std::chrono::steady_clock::now();
    rom.wall_clock_seconds = std::chrono::duration<double>(t1 - t0).count();
    return rom;
}

}  // namespace

RomTrajectory run_nm_lspg(const GridSpec& grid, const MaskedAutoencoder& model,
                          const Vec& u_ref, const FomConfig& cfg,
                          const GaussNewtonConfig& gn) {
    cfg.validate();
    const Vec u0 = initial_state(grid, cfg.mu);
    const Vec z0 = encode(model, u0 - u_ref);
    return run_lspg_loop(
        z0, cfg.n_steps, gn,
        [&](const Vec& z, const Vec& z_prev) {
            return nm_residual(grid, model, u_ref, z, z_prev, cfg);
        },
        [&](const Vec& z) { return nm_residual_jacobian(grid, model, u_ref, z, cfg); });
}

RomTrajectory run_ls_lspg(const GridSpec& grid, const ReducedBasis& basis,
                          const Vec& u_ref, const FomConfig& cfg,
                          const GaussNewtonConfig& gn) {
    cfg.validate();
    if (basis.phi.rows() != grid.state_dim())
        throw StructuralError("run_ls_lspg: basis/grid dimension mismatch");
    const Vec u0 = initial_state(grid, cfg.mu);
    const Vec z0 = basis.phi.transpose() * (u0 - u_ref);
    return run_lspg_loop(
        z0, cfg.n_steps, gn,
        [&](const Vec& z, const Vec& z_prev) {
            const Vec u = u_ref + basis.phi * z;
            return Vec(basis.phi * (z - z_prev) - cfg.dt() * rhs(grid, u, cfg));
        },
        [&](const Vec& z) {
            const Vec u = u_ref + basis.phi * z;
            return Mat(be_jacobian(grid, u, cfg) * basis.phi);
        });
}

std::vector<Vec> decode_trajectory(const MaskedAutoencoder& model, const Vec& u_ref,
                                   const RomTrajectory& rom) {
    std::vector<Vec> states;
    states.reserve(rom.latent_states.size());
    for (const auto& z : rom.latent_states) states.push_back(u_ref + decode(model, z));
    return states;
}

std::vector<Vec> decode_trajectory(const ReducedBasis& basis, const Vec& u_ref,
                                   const RomTrajectory& rom) {
    std::vector<Vec> states;
    states.reserve(rom.latent_states.size());
    for (const auto& z : rom.latent_states) states.push_back(u_ref + basis.phi * z);
    return states;
}

}  // namespace nmrom
