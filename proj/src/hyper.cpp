#include "nmrom/hyper.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace nmrom {

std::vector<int> select_sample_indices(const Mat& phi_r, int n_z) {
    const int n = static_cast<int>(phi_r.rows());
    const int n_r = static_cast<int>(phi_r.cols());
    if (n_r < 1 || n_z < n_r || n_z > n)
        throw ConfigError("select_sample_indices: need 1 <= n_r <= n_z <= N");

    std::vector<int> chosen;
    chosen.reserve(n_z);
    std::vector<char> taken(n, 0);
    auto pick_max = [&](const Vec& err) {
        int best = -1;
        double best_mag = -1.0;
        for (int i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double mag = std::abs(err[i]);
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        chosen.push_back(best);
        taken[best] = 1;
    };
    auto rows_of = [&](const Mat& cols) {
        Mat sub(static_cast<Eigen::Index>(chosen.size()), cols.cols());
        for (std::size_t r = 0; r < chosen.size(); ++r) sub.row(r) = cols.row(chosen[r]);
        return sub;
    };

    // Classic DEIM pass over the basis columns.
    pick_max(phi_r.col(0));
    for (int k = 1; k < n_r; ++k) {
        const Mat prev = phi_r.leftCols(k);
        const Vec target = phi_r.col(k);
        Vec sampled(static_cast<Eigen::Index>(chosen.size()));
        for (std::size_t r = 0; r < chosen.size(); ++r) sampled[r] = target[chosen[r]];
        const Vec coeff = Mat(rows_of(prev)).colPivHouseholderQr().solve(sampled);
        pick_max(target - prev * coeff);
    }
    // Oversampling: cycle columns, each time fitting column j from the other
    // columns on the selected rows and sampling where that fails worst.
    for (int extra = 0; static_cast<int>(chosen.size()) < n_z; ++extra) {
        const int j = extra % n_r;
        const Vec target = phi_r.col(j);
        if (n_r == 1) {
            pick_max(target);
            continue;
        }
        Mat others(n, n_r - 1);
        int c = 0;
        for (int k = 0; k < n_r; ++k)
            if (k != j) others.col(c++) = phi_r.col(k);
        Vec sampled(static_cast<Eigen::Index>(chosen.size()));
        for (std::size_t r = 0; r < chosen.size(); ++r) sampled[r] = target[chosen[r]];
        const Vec coeff = Mat(rows_of(others)).colPivHouseholderQr().solve(sampled);
        pick_max(target - others * coeff);
    }
    return chosen;
}

Mat precompute_pseudo_inverse(const Mat& phi_r, const std::vector<int>& indices) {
    const int n_r = static_cast<int>(phi_r.cols());
    const int n_z = static_cast<int>(indices.size());
    if (n_z < n_r)
        throw ConfigError("precompute_pseudo_inverse: fewer samples than basis columns");
    Mat sampled(n_z, n_r);
    for (int r = 0; r < n_z; ++r) {
        if (indices[r] < 0 || indices[r] >= phi_r.rows())
            throw StructuralError("precompute_pseudo_inverse: index out of range");
        sampled.row(r) = phi_r.row(indices[r]);
    }
    Eigen::BDCSVD<Mat> svd(sampled);
    const double smin = svd.singularValues().minCoeff();
    if (!(smin > 1e-12))
        throw NumericalError(
            "precompute_pseudo_inverse: sampled block rank-deficient, smallest "
            "singular value " +
            std::to_string(smin));
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(sampled);
    return cod.pseudoInverse();
}

std::vector<int> stencil_closure(const std::vector<int>& sample_indices,
                                 const GridSpec& grid) {
    std::vector<int> out;
    auto add_node = [&](int i, int j) {
        if (i < 1 || i > grid.interior_x() || j < 1 || j > grid.interior_y()) return;
        out.push_back(grid.flat(0, i, j));
        out.push_back(grid.flat(1, i, j));
    };
    for (int idx : sample_indices) {
        if (idx < 0 || idx >= grid.state_dim())
            throw StructuralError("stencil_closure: sample index out of range");
        const auto node = grid.unflat(idx);
        add_node(node.i, node.j);
        add_node(node.i - 1, node.j);
        add_node(node.i + 1, node.j);
        add_node(node.i, node.j - 1);
        add_node(node.i, node.j + 1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DecoderSubnet build_subnet(const MaskedAutoencoder& model,
                           const std::vector<int>& outputs) {
    if (outputs.empty()) throw StructuralError("build_subnet: empty output set");
    DecoderSubnet net;
    net.outputs = outputs;
    net.n_latent = model.n_latent;

    std::vector<int> hidden;
    for (int r : outputs) {
        if (r < 0 || r >= model.n_full)
            throw StructuralError("build_subnet: output index out of range");
        for (int p = model.mask.row_ptr[r]; p < model.mask.row_ptr[r + 1]; ++p)
            hidden.push_back(model.mask.col_idx[p]);
    }
    std::sort(hidden.begin(), hidden.end());
    hidden.erase(std::unique(hidden.begin(), hidden.end()), hidden.end());
    net.hidden_units = hidden;

    std::unordered_map<int, int> hidden_pos;
    for (std::size_t k = 0; k < hidden.size(); ++k) hidden_pos[hidden[k]] = static_cast<int>(k);

    net.dec_w1.resize(static_cast<Eigen::Index>(hidden.size()), model.n_latent);
    net.dec_b1.resize(static_cast<Eigen::Index>(hidden.size()));
    for (std::size_t k = 0; k < hidden.size(); ++k) {
        net.dec_w1.row(static_cast<Eigen::Index>(k)) = model.dec_w1.row(hidden[k]);
        net.dec_b1[static_cast<Eigen::Index>(k)] = model.dec_b1[hidden[k]];
    }

    net.mask.rows = static_cast<int>(outputs.size());
    net.mask.cols = static_cast<int>(hidden.size());
    net.mask.row_ptr.resize(outputs.size() + 1);
    net.dec_b2.resize(static_cast<Eigen::Index>(outputs.size()));
    for (std::size_t r = 0; r < outputs.size(); ++r) {
        net.mask.row_ptr[r] = static_cast<int>(net.mask.col_idx.size());
        const int gr = outputs[r];
        for (int p = model.mask.row_ptr[gr]; p < model.mask.row_ptr[gr + 1]; ++p) {
            net.mask.col_idx.push_back(hidden_pos.at(model.mask.col_idx[p]));
            net.dec_w2.push_back(model.dec_w2[p]);
        }
        net.dec_b2[static_cast<Eigen::Index>(r)] = model.dec_b2[gr];
    }
    net.mask.row_ptr[outputs.size()] = static_cast<int>(net.mask.col_idx.size());
    return net;
}

namespace {

// Same scalar accumulation order as the full decoder so shared hidden units
// evaluate bit-identically.
inline double hidden_pre(const Mat& w1, const Vec& b1, const Vec& z, Eigen::Index k) {
    double acc = b1[k];
    for (Eigen::Index c = 0; c < z.size(); ++c) acc += w1(k, c) * z[c];
    return acc;
}

}  // namespace

Vec subnet_decode(const DecoderSubnet& net, const Vec& z) {
    if (z.size() != net.n_latent)
        throw StructuralError("subnet_decode: input size != n_latent");
    Vec h(net.dec_b1.size());
    for (Eigen::Index i = 0; i < h.size(); ++i)
        h[i] = swish(hidden_pre(net.dec_w1, net.dec_b1, z, i));
    if (net.mac_counter)
        *net.mac_counter += static_cast<long>(net.dec_w1.size());
    Vec y = net.dec_b2;
    for (int r = 0; r < net.mask.rows; ++r) {
        double acc = 0.0;
        for (int p = net.mask.row_ptr[r]; p < net.mask.row_ptr[r + 1]; ++p)
            acc += net.dec_w2[p] * h[net.mask.col_idx[p]];
        y[r] += acc;
    }
    if (net.mac_counter) *net.mac_counter += net.mask.nnz();
    return y;
}

Mat subnet_jacobian(const DecoderSubnet& net, const Vec& z) {
    Vec hp(net.dec_b1.size());
    for (Eigen::Index i = 0; i < hp.size(); ++i)
        hp[i] = swish_prime(hidden_pre(net.dec_w1, net.dec_b1, z, i));
    Mat jac = Mat::Zero(net.mask.rows, net.n_latent);
    for (int r = 0; r < net.mask.rows; ++r)
        for (int p = net.mask.row_ptr[r]; p < net.mask.row_ptr[r + 1]; ++p) {
            const int k = net.mask.col_idx[p];
            jac.row(r) += net.dec_w2[p] * hp[k] * net.dec_w1.row(k);
        }
    if (net.mac_counter)
        *net.mac_counter +=
            static_cast<long>(net.dec_w1.size()) + static_cast<long>(net.mask.nnz()) * net.n_latent;
    return jac;
}

HyperReductionPlan make_plan(const GridSpec& grid, const ReducedBasis& residual_basis,
                             int n_z, const MaskedAutoencoder* model) {
    if (residual_basis.phi.rows() != grid.state_dim())
        throw StructuralError("make_plan: residual basis does not match grid");
    HyperReductionPlan plan;
    plan.n_r = static_cast<int>(residual_basis.phi.cols());
    plan.sample_indices = select_sample_indices(residual_basis.phi, n_z);
    plan.pseudo_inverse = precompute_pseudo_inverse(residual_basis.phi, plan.sample_indices);
    plan.closure_outputs = stencil_closure(plan.sample_indices, grid);

    std::unordered_map<int, int> pos;
    for (std::size_t k = 0; k < plan.closure_outputs.size(); ++k)
        pos[plan.closure_outputs[k]] = static_cast<int>(k);
    auto local = [&](int comp, int i, int j) -> int {
        if (i < 1 || i > grid.interior_x() || j < 1 || j > grid.interior_y()) return -1;
        return pos.at(grid.flat(comp, i, j));
    };
    plan.stencils.reserve(plan.sample_indices.size());
    for (int idx : plan.sample_indices) {
        const auto node = grid.unflat(idx);
        HyperReductionPlan::Stencil st;
        st.self = pos.at(idx);
        st.u_center = local(0, node.i, node.j);
        st.v_center = local(1, node.i, node.j);
        st.west = local(node.comp, node.i - 1, node.j);
        st.east = local(node.comp, node.i + 1, node.j);
        st.south = local(node.comp, node.i, node.j - 1);
        st.north = local(node.comp, node.i, node.j + 1);
        plan.stencils.push_back(st);
    }
    if (model) {
        plan.subnet = build_subnet(*model, plan.closure_outputs);
        plan.has_subnet = true;
    }
    return plan;
}

namespace {

inline double closure_at(const Vec& u, int pos) { return pos >= 0 ? u[pos] : 0.0; }

// Sampled backward-Euler residual from closure values of g(z_n), g(z_prev).
Vec sampled_residual(const GridSpec& grid, const HyperReductionPlan& plan,
                     const Vec& u_ref_closure, const Vec& g_n, const Vec& g_prev,
                     const FomConfig& cfg) {
    const double hx = grid.hx, hy = grid.hy;
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    const double nu = 1.0 / cfg.re;
    const Vec u = u_ref_closure + g_n;
    Vec r(static_cast<Eigen::Index>(plan.stencils.size()));
    for (std::size_t k = 0; k < plan.stencils.size(); ++k) {
        const auto& st = plan.stencils[k];
        const double uc = u[st.u_center];
        const double vc = u[st.v_center];
        const double c = u[st.self];
        const double w = closure_at(u, st.west);
        const double e = closure_at(u, st.east);
        const double s = closure_at(u, st.south);
        const double n = closure_at(u, st.north);
        const double conv = uc * (c - w) / hx + vc * (c - s) / hy;
        const double diff = (w - 2.0 * c + e) * ihx2 + (s - 2.0 * c + n) * ihy2;
        r[static_cast<Eigen::Index>(k)] =
            g_n[st.self] - g_prev[st.self] - cfg.dt() * (-conv + nu * diff);
    }
    return r;
}

// Sampled residual Jacobian given g(z_n) closure values and the closure-row
// Jacobian of the reduced-to-full map.
Mat sampled_jacobian(const GridSpec& grid, const HyperReductionPlan& plan,
                     const Vec& u_ref_closure, const Vec& g_n, const Mat& jac_g,
                     const FomConfig& cfg) {
    const double hx = grid.hx, hy = grid.hy;
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    const double nu = 1.0 / cfg.re;
    const double dt = cfg.dt();
    const Vec u = u_ref_closure + g_n;
    Mat jac(static_cast<Eigen::Index>(plan.stencils.size()), jac_g.cols());
    for (std::size_t k = 0; k < plan.stencils.size(); ++k) {
        const auto& st = plan.stencils[k];
        const double uc = u[st.u_center];
        const double vc = u[st.v_center];
        const double c = u[st.self];
        const double w = closure_at(u, st.west);
        const double s = closure_at(u, st.south);
        auto row = jac.row(static_cast<Eigen::Index>(k));
        row = jac_g.row(st.self);
        auto add = [&](int pos, double dfdu) {
            if (pos >= 0) row -= dt * dfdu * jac_g.row(pos);
        };
        add(st.self, -uc / hx - vc / hy - 2.0 * nu * (ihx2 + ihy2));
        add(st.u_center, -(c - w) / hx);
        add(st.v_center, -(c - s) / hy);
        add(st.west, uc / hx + nu * ihx2);
        add(st.east, nu * ihx2);
        add(st.south, vc / hy + nu * ihy2);
        add(st.north, nu * ihy2);
        jac.row(static_cast<Eigen::Index>(k)) = row;
    }
    return jac;
}

Vec restrict_to_closure(const Vec& full, const std::vector<int>& closure) {
    Vec out(static_cast<Eigen::Index>(closure.size()));
    for (std::size_t k = 0; k < closure.size(); ++k) out[k] = full[closure[k]];
    return out;
}

template <class DecodeAt, class JacobianAt>
RomTrajectory run_hr_loop(const GridSpec& grid, const HyperReductionPlan& plan,
                          const Vec& u_ref_closure, const Vec& z0,
                          const FomConfig& cfg, const GaussNewtonConfig& gn,
                          DecodeAt&& decode_at, JacobianAt&& jacobian_at) {
    RomTrajectory rom;
    rom.latent_states.reserve(cfg.n_steps + 1);
    rom.latent_states.push_back(z0);

    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 1; n <= cfg.n_steps; ++n) {
        const Vec& z_prev = rom.latent_states.back();
        const Vec g_prev = decode_at(z_prev);
        GaussNewtonResult res;
        try {
            res = gauss_newton(
                [&](const Vec& z) {
                    return Vec(plan.pseudo_inverse *
                               sampled_residual(grid, plan, u_ref_closure,
                                                decode_at(z), g_prev, cfg));
                },
                [&](const Vec& z) {
                    return Mat(plan.pseudo_inverse *
                               sampled_jacobian(grid, plan, u_ref_closure,
                                                decode_at(z), jacobian_at(z), cfg));
                },
                z_prev, gn);
        } catch (const NumericalError& e) {
            throw NumericalError("lspg-hr: step " + std::to_string(n) + ": " + e.what());
        }
        if (!res.converged)
            throw NumericalError("lspg-hr: step " + std::to_string(n) +
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

Vec hr_residual(const GridSpec& grid, const HyperReductionPlan& plan,
                const Vec& u_ref_closure, const Vec& z_n, const Vec& z_prev,
                const FomConfig& cfg) {
    if (!plan.has_subnet)
        throw StructuralError("hr_residual: plan has no decoder subnet");
    return plan.pseudo_inverse *
           sampled_residual(grid, plan, u_ref_closure, subnet_decode(plan.subnet, z_n),
                            subnet_decode(plan.subnet, z_prev), cfg);
}

Mat hr_residual_jacobian(const GridSpec& grid, const HyperReductionPlan& plan,
                         const Vec& u_ref_closure, const Vec& z_n,
                         const FomConfig& cfg) {
    if (!plan.has_subnet)
        throw StructuralError("hr_residual_jacobian: plan has no decoder subnet");
    return plan.pseudo_inverse *
           sampled_jacobian(grid, plan, u_ref_closure, subnet_decode(plan.subnet, z_n),
                            subnet_jacobian(plan.subnet, z_n), cfg);
}

RomTrajectory run_nm_lspg_hr(const GridSpec& grid, const MaskedAutoencoder& model,
                             const HyperReductionPlan& plan, const Vec& u_ref,
                             const FomConfig& cfg, const GaussNewtonConfig& gn) {
    cfg.validate();
    if (!plan.has_subnet)
        throw StructuralError("run_nm_lspg_hr: plan has no decoder subnet");
    const Vec u0 = initial_state(grid, cfg.mu);
    const Vec z0 = encode(model, u0 - u_ref);
    const Vec u_ref_closure = restrict_to_closure(u_ref, plan.closure_outputs);
    return run_hr_loop(
        grid, plan, u_ref_closure, z0, cfg, gn,
        [&](const Vec& z) { return subnet_decode(plan.subnet, z); },
        [&](const Vec& z) { return subnet_jacobian(plan.subnet, z); });
}

RomTrajectory run_ls_lspg_hr(const GridSpec& grid, const ReducedBasis& basis,
                             const HyperReductionPlan& plan, const Vec& u_ref,
                             const FomConfig& cfg, const GaussNewtonConfig& gn) {
    cfg.validate();
    if (basis.phi.rows() != grid.state_dim())
        throw StructuralError("run_ls_lspg_hr: basis/grid dimension mismatch");
    const Vec u0 = initial_state(grid, cfg.mu);
    const Vec z0 = basis.phi.transpose() * (u0 - u_ref);
    const Vec u_ref_closure = restrict_to_closure(u_ref, plan.closure_outputs);
    Mat phi_closure(static_cast<Eigen::Index>(plan.closure_outputs.size()),
                    basis.phi.cols());
    for (std::size_t k = 0; k < plan.closure_outputs.size(); ++k)
        phi_closure.row(static_cast<Eigen::Index>(k)) =
            basis.phi.row(plan.closure_outputs[k]);
    return run_hr_loop(
        grid, plan, u_ref_closure, z0, cfg, gn,
        [&](const Vec& z) { return Vec(phi_closure * z); },
        [&](const Vec&) { return phi_closure; });
}

namespace {

constexpr char kPlanMagic[8] = {'R', 'O', 'M', 'H', 'R', 'P', 'L', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_i64(std::ostream& os, std::int64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64_block(std::ostream& os, const double* data, std::size_t n) {
    os.write(reinterpret_cast<const char*>(data),
             static_cast<std::streamsize>(sizeof(double) * n));
}

struct Reader {
    std::ifstream is;
    std::size_t offset = 0;
    explicit Reader(const std::string& path) : is(path, std::ios::binary) {
        if (!is) throw FormatError("cannot open '" + path + "'", 0);
    }
    void read_raw(void* dst, std::size_t n, const char* what) {
        is.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(is.gcount()) != n)
            throw FormatError(std::string("truncated plan file while reading ") + what,
                              offset);
        offset += n;
    }
    std::uint64_t get_u64(const char* what) {
        std::uint64_t v;
        read_raw(&v, sizeof v, what);
        return v;
    }
    std::int64_t get_i64(const char* what) {
        std::int64_t v;
        read_raw(&v, sizeof v, what);
        return v;
    }
};

}  // namespace

void write_plan(const HyperReductionPlan& plan, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open '" + path + "' for writing", 0);
    os.write(kPlanMagic, sizeof kPlanMagic);
    put_u64(os, plan.sample_indices.size());
    put_u64(os, static_cast<std::uint64_t>(plan.n_r));
    put_u64(os, plan.closure_outputs.size());
    put_u64(os, plan.has_subnet ? 1 : 0);
    for (int v : plan.sample_indices) put_u64(os, static_cast<std::uint64_t>(v));
    put_f64_block(os, plan.pseudo_inverse.data(),
                  static_cast<std::size_t>(plan.pseudo_inverse.size()));
    for (int v : plan.closure_outputs) put_u64(os, static_cast<std::uint64_t>(v));
    for (const auto& st : plan.stencils) {
        put_i64(os, st.self);
        put_i64(os, st.u_center);
        put_i64(os, st.v_center);
        put_i64(os, st.west);
        put_i64(os, st.east);
        put_i64(os, st.south);
        put_i64(os, st.north);
    }
    if (plan.has_subnet) {
        const auto& net = plan.subnet;
        put_u64(os, net.hidden_units.size());
        put_u64(os, static_cast<std::uint64_t>(net.n_latent));
        put_u64(os, net.mask.col_idx.size());
        for (int v : net.outputs) put_u64(os, static_cast<std::uint64_t>(v));
        for (int v : net.hidden_units) put_u64(os, static_cast<std::uint64_t>(v));
        for (int v : net.mask.row_ptr) put_u64(os, static_cast<std::uint64_t>(v));
        for (int v : net.mask.col_idx) put_u64(os, static_cast<std::uint64_t>(v));
        put_f64_block(os, net.dec_w1.data(), static_cast<std::size_t>(net.dec_w1.size()));
        put_f64_block(os, net.dec_b1.data(), static_cast<std::size_t>(net.dec_b1.size()));
        put_f64_block(os, net.dec_w2.data(), net.dec_w2.size());
        put_f64_block(os, net.dec_b2.data(), static_cast<std::size_t>(net.dec_b2.size()));
    }
    if (!os) throw FormatError("write failure on '" + path + "'", 0);
}

HyperReductionPlan read_plan(const std::string& path) {
    Reader rd(path);
    char magic[8];
    rd.read_raw(magic, sizeof magic, "magic");
    if (std::memcmp(magic, kPlanMagic, sizeof kPlanMagic) != 0)
        throw FormatError("bad magic, not a ROMHRPL1 file", 0);
    HyperReductionPlan plan;
    const auto n_z = rd.get_u64("sample count");
    plan.n_r = static_cast<int>(rd.get_u64("residual basis size"));
    const auto n_closure = rd.get_u64("closure size");
    plan.has_subnet = rd.get_u64("subnet flag") != 0;
    plan.sample_indices.resize(n_z);
    for (auto& v : plan.sample_indices) v = static_cast<int>(rd.get_u64("sample index"));
    plan.pseudo_inverse.resize(plan.n_r, static_cast<Eigen::Index>(n_z));
    rd.read_raw(plan.pseudo_inverse.data(),
                sizeof(double) * static_cast<std::size_t>(plan.pseudo_inverse.size()),
                "pseudo-inverse");
    plan.closure_outputs.resize(n_closure);
    for (auto& v : plan.closure_outputs) v = static_cast<int>(rd.get_u64("closure index"));
    plan.stencils.resize(n_z);
    for (auto& st : plan.stencils) {
        st.self = static_cast<int>(rd.get_i64("stencil"));
        st.u_center = static_cast<int>(rd.get_i64("stencil"));
        st.v_center = static_cast<int>(rd.get_i64("stencil"));
        st.west = static_cast<int>(rd.get_i64("stencil"));
        st.east = static_cast<int>(rd.get_i64("stencil"));
        st.south = static_cast<int>(rd.get_i64("stencil"));
        st.north = static_cast<int>(rd.get_i64("stencil"));
    }
    if (plan.has_subnet) {
        auto& net = plan.subnet;
        const auto n_hidden = rd.get_u64("subnet hidden count");
        net.n_latent = static_cast<int>(rd.get_u64("subnet latent size"));
        const auto nnz = rd.get_u64("subnet nnz");
        net.outputs.resize(n_closure);
        for (auto& v : net.outputs) v = static_cast<int>(rd.get_u64("subnet output"));
        net.hidden_units.resize(n_hidden);
        for (auto& v : net.hidden_units) v = static_cast<int>(rd.get_u64("subnet hidden"));
        net.mask.rows = static_cast<int>(n_closure);
        net.mask.cols = static_cast<int>(n_hidden);
        net.mask.row_ptr.resize(n_closure + 1);
        for (auto& v : net.mask.row_ptr) v = static_cast<int>(rd.get_u64("subnet row_ptr"));
        net.mask.col_idx.resize(nnz);
        for (auto& v : net.mask.col_idx) v = static_cast<int>(rd.get_u64("subnet col_idx"));
        net.dec_w1.resize(static_cast<Eigen::Index>(n_hidden), net.n_latent);
        rd.read_raw(net.dec_w1.data(),
                    sizeof(double) * static_cast<std::size_t>(net.dec_w1.size()),
                    "subnet dec_w1");
        net.dec_b1.resize(static_cast<Eigen::Index>(n_hidden));
        rd.read_raw(net.dec_b1.data(), sizeof(double) * n_hidden, "subnet dec_b1");
        net.dec_w2.resize(nnz);
        rd.read_raw(net.dec_w2.data(), sizeof(double) * nnz, "subnet dec_w2");
        net.dec_b2.resize(static_cast<Eigen::Index>(n_closure));
        rd.read_raw(net.dec_b2.data(), sizeof(double) * n_closure, "subnet dec_b2");
    }
    return plan;
}

}  // namespace nmrom
