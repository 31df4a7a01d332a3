// Property suite: one pass/fail line per criterion, nonzero exit on failure.
#include <Eigen/QR>
#include <cstdio>
#include <random>

#include "nmrom/hyper.hpp"
#include "nmrom/snapshot.hpp"
#include "nmrom/train.hpp"

using namespace nmrom;

namespace {

int failures = 0;

void report(const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++failures;
}

Vec random_vec(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

Mat random_orthonormal(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Mat a(n, k);
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < n; ++r) a(r, c) = dist(rng);
    return Eigen::HouseholderQR<Mat>(a).householderQ() * Mat::Identity(n, k);
}

bool fom_jacobian_fd() {
    std::mt19937_64 rng(11);
    for (int nodes : {4, 6}) {
        GridSpec g(nodes, nodes);
        const int n = g.state_dim();
        FomConfig cfg;
        cfg.mu = 1.0;
        cfg.re = 100.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Vec u = random_vec(n, rng);
            const Mat jac = Mat(rhs_jacobian(g, u, cfg));
            const double h = 1e-6;
            Mat fd(n, n);
            for (int c = 0; c < n; ++c) {
                Vec up = u, um = u;
                up[c] += h;
                um[c] -= h;
                fd.col(c) = (rhs(g, up, cfg) - rhs(g, um, cfg)) / (2 * h);
            }
            if ((jac - fd).norm() / fd.norm() > 1e-5) return false;
        }
    }
    return true;
}

bool autoencoder_gradients() {
    MaskedAutoencoder model = make_autoencoder(6, 8, 8, 2, 3, 13);
    std::mt19937_64 rng(4);
    Mat batch(6, 3);
    for (int c = 0; c < 3; ++c) batch.col(c) = random_vec(6, rng);
    ModelGradients g;
    loss_and_gradients(model, batch, g);

    auto check = [&](double* param, const double* grad, std::size_t n) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 1e-6, orig = param[i];
            param[i] = orig + h;
            const double lp = evaluate_loss(model, batch);
            param[i] = orig - h;
            const double lm = evaluate_loss(model, batch);
            param[i] = orig;
            const double fd = (lp - lm) / (2 * h);
            num += (grad[i] - fd) * (grad[i] - fd);
            den += fd * fd;
        }
        return std::sqrt(num) / std::max(std::sqrt(den), 1e-12) <= 1e-5;
    };
    return check(model.enc_w1.data(), g.enc_w1.data(), model.enc_w1.size()) &&
           check(model.enc_b1.data(), g.enc_b1.data(), model.enc_b1.size()) &&
           check(model.enc_w2.data(), g.enc_w2.data(), model.enc_w2.size()) &&
           check(model.enc_b2.data(), g.enc_b2.data(), model.enc_b2.size()) &&
           check(model.dec_w1.data(), g.dec_w1.data(), model.dec_w1.size()) &&
           check(model.dec_b1.data(), g.dec_b1.data(), model.dec_b1.size()) &&
           check(model.dec_w2.data(), g.dec_w2.data(), model.dec_w2.size()) &&
           check(model.dec_b2.data(), g.dec_b2.data(), model.dec_b2.size());
}

bool decoder_jacobian_check() {
    const MaskedAutoencoder m = make_autoencoder(12, 10, 24, 3, 4, 7);
    std::mt19937_64 rng(5);
    const Vec z = random_vec(3, rng);
    const Mat jac = decoder_jacobian(m, z);
    const double h = 1e-6;
    Mat fd(12, 3);
    for (int c = 0; c < 3; ++c) {
        Vec zp = z, zm = z;
        zp[c] += h;
        zm[c] -= h;
        fd.col(c) = (decode(m, zp) - decode(m, zm)) / (2 * h);
    }
    if ((jac - fd).norm() / fd.norm() > 1e-6) return false;

    // sparsity follows reachability: zero the hidden rows feeding one output
    // and its Jacobian row must vanish while the others stay nonzero
    MaskedAutoencoder pruned = m;
    const int row = 5;
    for (int p = pruned.mask.row_ptr[row]; p < pruned.mask.row_ptr[row + 1]; ++p)
        pruned.dec_w1.row(pruned.mask.col_idx[p]).setZero();
    const Mat pj = decoder_jacobian(pruned, z);
    if (pj.row(row).norm() != 0.0) return false;
    for (int r = 0; r < 12; ++r)
        if (r != row && jac.row(r).norm() == 0.0) return false;
    return true;
}

bool subnet_equivalence() {
    const int n = 24;
    const MaskedAutoencoder model = make_autoencoder(n, 10, 3 * n, 4, 5, 77);
    std::vector<int> outputs = {0, 3, 4, 9, 10, 17, 23};
    const DecoderSubnet net = build_subnet(model, outputs);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        const Vec z = random_vec(4, rng);
        const Vec full = decode(model, z);
        const Vec sub = subnet_decode(net, z);
        const Mat full_jac = decoder_jacobian(model, z);
        const Mat sub_jac = subnet_jacobian(net, z);
        for (std::size_t k = 0; k < outputs.size(); ++k) {
            if (sub[static_cast<Eigen::Index>(k)] != full[outputs[k]]) return false;
            if ((sub_jac.row(static_cast<Eigen::Index>(k)) - full_jac.row(outputs[k]))
                    .lpNorm<Eigen::Infinity>() > 1e-14)
                return false;
        }
    }
    return true;
}

bool gappy_exactness() {
    const int n = 150, n_r = 7, n_z = 12;
    const Mat phi = random_orthonormal(n, n_r, 13);
    const auto idx = select_sample_indices(phi, n_z);
    const Mat pinv = precompute_pseudo_inverse(phi, idx);
    Mat zt = Mat::Zero(n_z, n);
    for (int r = 0; r < n_z; ++r) zt(r, idx[r]) = 1.0;
    const Mat projector = phi * pinv * zt;
    std::mt19937_64 rng(14);
    for (int t = 0; t < 20; ++t) {
        const Vec r = phi * random_vec(n_r, rng);
        if ((projector * r - r).norm() > 1e-10) return false;
        const Vec v = random_vec(n, rng);
        if ((projector * (projector * v) - projector * v).norm() > 1e-10) return false;
    }
    return true;
}

bool gn_affine_exactness() {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 8 + static_cast<int>(rng() % 8);
        const int k = 2 + static_cast<int>(rng() % 4);
        Mat a(m, k);
        Vec b(m), start(k);
        for (int r = 0; r < m; ++r) b[r] = dist(rng);
        for (int c = 0; c < k; ++c) {
            start[c] = dist(rng);
            for (int r = 0; r < m; ++r) a(r, c) = dist(rng);
        }
        GaussNewtonConfig cfg;
        cfg.abs_tol = 1e-14;
        cfg.safeguard = false;
        const auto res =
            gauss_newton([&](const Vec& z) { return Vec(a * z - b); },
                         [&](const Vec&) { return a; }, start, cfg);
        const Vec exact = a.colPivHouseholderQr().solve(b);
        if (!res.converged || res.iterations != 1) return false;
        if ((res.solution - exact).norm() > 1e-10) return false;
        if ((a * res.solution - b).norm() > (a * exact - b).norm() + 1e-10) return false;
    }
    return true;
}

bool full_sampling_limits() {
    GridSpec g(10, 10);
    const int n = g.state_dim();
    FomConfig cfg;
    cfg.mu = 1.0;
    cfg.re = 100.0;
    cfg.t_final = 0.2;
    cfg.n_steps = 10;
    GaussNewtonConfig gn;
    gn.abs_tol = 1e-10;
    gn.max_iter = 50;
    ReducedBasis eye;
    eye.phi = Mat::Identity(n, n);
    eye.singular_values = Vec::Ones(n);
    const Vec u_ref = initial_state(g, cfg.mu);

    // LS pair, trial basis from FOM snapshots
    const Trajectory fom = run_fom(g, cfg);
    SnapshotMatrix snaps;
    snaps.data.resize(n, static_cast<Eigen::Index>(fom.states.size()));
    for (std::size_t k = 0; k < fom.states.size(); ++k)
        snaps.data.col(static_cast<Eigen::Index>(k)) = fom.states[k] - u_ref;
    snaps.column_meta.resize(fom.states.size());
    const ReducedBasis trial = compute_basis(snaps, 5);
    {
        const HyperReductionPlan plan = make_plan(g, eye, n, nullptr);
        const RomTrajectory a = run_ls_lspg(g, trial, u_ref, cfg, gn);
        const RomTrajectory b = run_ls_lspg_hr(g, trial, plan, u_ref, cfg, gn);
        if (a.latent_states.size() != b.latent_states.size()) return false;
        for (std::size_t k = 0; k < a.latent_states.size(); ++k)
            if ((a.latent_states[k] - b.latent_states[k]).norm() > 1e-8) return false;
    }
    // NM pair, small untrained manifold with mild dynamics
    {
        const MaskedAutoencoder model = make_autoencoder(n, 10, 3 * n, 4, 5, 55);
        const Vec zero_ref = Vec::Zero(n);
        FomConfig small = cfg;
        small.mu = 0.2;
        small.n_steps = 5;
        GaussNewtonConfig gn2 = gn;
        gn2.abs_tol = 1e-9;
        const HyperReductionPlan plan = make_plan(g, eye, n, &model);
        const RomTrajectory a = run_nm_lspg(g, model, zero_ref, small, gn2);
        const RomTrajectory b = run_nm_lspg_hr(g, model, plan, zero_ref, small, gn2);
        if (a.latent_states.size() != b.latent_states.size()) return false;
        for (std::size_t k = 0; k < a.latent_states.size(); ++k)
            if ((a.latent_states[k] - b.latent_states[k]).norm() > 1e-8) return false;
    }
    return true;
}

bool file_round_trips() {
    std::mt19937_64 rng(3);
    bool ok = true;

    // snapshots
    {
        SnapshotMatrix m;
        m.data.resize(7, 5);
        for (int c = 0; c < 5; ++c) m.data.col(c) = random_vec(7, rng);
        m.column_meta.resize(5);
        for (int c = 0; c < 5; ++c) m.column_meta[c] = {0.9 + 0.05 * c, static_cast<std::uint64_t>(c)};
        m.reference_state = random_vec(7, rng);
        write_snapshots(m, "acc_snap.bin");
        const SnapshotMatrix back = read_snapshots("acc_snap.bin");
        ok = ok && back.data == m.data && back.reference_state == m.reference_state;
        for (int c = 0; c < 5; ++c)
            ok = ok && back.column_meta[c].mu == m.column_meta[c].mu &&
                 back.column_meta[c].time_index == m.column_meta[c].time_index;
        std::remove("acc_snap.bin");
    }
    // model
    {
        MaskedAutoencoder m = make_autoencoder(10, 7, 20, 3, 3, 99);
        m.u_ref = random_vec(10, rng);
        write_model(m, "acc_model.bin");
        const MaskedAutoencoder back = read_model("acc_model.bin");
        ok = ok && back.enc_w1 == m.enc_w1 && back.enc_w2 == m.enc_w2 &&
             back.dec_w1 == m.dec_w1 && back.dec_w2 == m.dec_w2 &&
             back.enc_b1 == m.enc_b1 && back.enc_b2 == m.enc_b2 &&
             back.dec_b1 == m.dec_b1 && back.dec_b2 == m.dec_b2 &&
             back.mask.col_idx == m.mask.col_idx && back.u_ref == m.u_ref;
        std::remove("acc_model.bin");
    }
    // plan
    {
        GridSpec g(8, 8);
        const int n = g.state_dim();
        const MaskedAutoencoder model = make_autoencoder(n, 8, 2 * n, 3, 4, 6);
        ReducedBasis basis;
        basis.phi = random_orthonormal(n, 5, 2);
        basis.singular_values = Vec::Ones(5);
        const HyperReductionPlan plan = make_plan(g, basis, 8, &model);
        write_plan(plan, "acc_plan.bin");
        const HyperReductionPlan back = read_plan("acc_plan.bin");
        ok = ok && back.sample_indices == plan.sample_indices &&
             back.pseudo_inverse == plan.pseudo_inverse &&
             back.closure_outputs == plan.closure_outputs &&
             back.subnet.dec_w1 == plan.subnet.dec_w1 &&
             back.subnet.dec_w2 == plan.subnet.dec_w2;
        std::remove("acc_plan.bin");
    }
    return ok;
}

}  // namespace

int main() {
    report("fom jacobian matches finite differences (4x4, 6x6, 20 states)",
           fom_jacobian_fd());
    report("autoencoder gradients match finite differences on all tensors",
           autoencoder_gradients());
    report("decoder jacobian: finite differences + mask reachability",
           decoder_jacobian_check());
    report("subnet equals full decoder on its outputs (100 latent vectors)",
           subnet_equivalence());
    report("gappy reconstruction exact on span, projector idempotent",
           gappy_exactness());
    report("gauss-newton solves affine systems exactly in one iteration",
           gn_affine_exactness());
    report("full-sampling hyper-reduced runs match the plain solvers",
           full_sampling_limits());
    report("snapshot/model/plan files round-trip bit-exact", file_round_trips());
    return failures == 0 ? 0 : 1;
}
