// romb: reduced-order-model workbench for the 2D viscous Burgers problem.
// Subcommands: fom, train, basis, plan, rom, bench, sweep. All take a JSON
// config (see docs/config.md); flags override config keys. Exit codes:
// 0 success, 2 config error, 3 numerical failure, 4 I/O error.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>

#include "nmrom/hyper.hpp"
#include "nmrom/metrics.hpp"
#include "nmrom/train.hpp"

using namespace nmrom;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ExperimentConfig {
    GridSpec grid{24, 24};
    FomConfig fom;
    std::vector<double> mu_train = {0.9, 0.95, 1.05, 1.1};
    double mu_target = 1.0;
    std::vector<int> latent_dims = {5};
    std::vector<std::pair<int, int>> hr_budgets = {{40, 46}, {55, 60}, {80, 90}};
    int enc_hidden = 0;   // 0: default to N
    int dec_hidden = 0;   // 0: default to 5N
    int mask_window = 10;
    std::uint64_t model_seed = 42;
    TrainConfig train;
    GaussNewtonConfig gn;
    std::uint64_t split_seed = 1234;
    std::vector<double> mu_sweep = {0.85, 0.9, 0.95, 1.0, 1.05, 1.1, 1.15};
    std::string output_dir = "out";
    int timing_repetitions = 1;
};

void require_keys(const json& j, const char* where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed) ok |= key == a;
        if (!ok)
            throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open config '" + path + "'", 0);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    require_keys(j, "config",
                 {"grid", "fom", "mu_train", "mu_target", "latent_dims", "hr_budgets",
                  "autoencoder", "train", "gauss_newton", "split_seed", "mu_sweep",
                  "output_dir", "timing_repetitions"});
    ExperimentConfig cfg;
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        require_keys(g, "grid", {"nx", "ny"});
        cfg.grid = GridSpec(g.value("nx", 24), g.value("ny", 24));
    }
    if (j.contains("fom")) {
        const auto& f = j["fom"];
        require_keys(f, "fom",
                     {"re", "t_final", "n_steps", "newton_tol", "newton_max_iter"});
        cfg.fom.re = f.value("re", cfg.fom.re);
        cfg.fom.t_final = f.value("t_final", cfg.fom.t_final);
        cfg.fom.n_steps = f.value("n_steps", cfg.fom.n_steps);
        cfg.fom.newton_tol = f.value("newton_tol", cfg.fom.newton_tol);
        cfg.fom.newton_max_iter = f.value("newton_max_iter", cfg.fom.newton_max_iter);
    }
    if (j.contains("mu_train")) cfg.mu_train = j["mu_train"].get<std::vector<double>>();
    cfg.mu_target = j.value("mu_target", cfg.mu_target);
    if (j.contains("latent_dims"))
        cfg.latent_dims = j["latent_dims"].get<std::vector<int>>();
    if (j.contains("hr_budgets")) {
        cfg.hr_budgets.clear();
        for (const auto& pair : j["hr_budgets"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("hr_budgets: each entry must be [n_r, n_z]");
            cfg.hr_budgets.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
    }
    if (j.contains("autoencoder")) {
        const auto& a = j["autoencoder"];
        require_keys(a, "autoencoder", {"enc_hidden", "dec_hidden", "mask_window", "seed"});
        cfg.enc_hidden = a.value("enc_hidden", 0);
        cfg.dec_hidden = a.value("dec_hidden", 0);
        cfg.mask_window = a.value("mask_window", cfg.mask_window);
        cfg.model_seed = a.value("seed", cfg.model_seed);
    }
    if (j.contains("train")) {
        const auto& t = j["train"];
        require_keys(t, "train",
                     {"initial_lr", "plateau_patience_epochs", "lr_decay_factor",
                      "batch_size", "max_epochs", "early_stop_patience_epochs", "seed",
                      "verbose", "log_every"});
        cfg.train.initial_lr = t.value("initial_lr", cfg.train.initial_lr);
        cfg.train.plateau_patience_epochs =
            t.value("plateau_patience_epochs", cfg.train.plateau_patience_epochs);
        cfg.train.lr_decay_factor = t.value("lr_decay_factor", cfg.train.lr_decay_factor);
        cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
        cfg.train.max_epochs = t.value("max_epochs", cfg.train.max_epochs);
        cfg.train.early_stop_patience_epochs =
            t.value("early_stop_patience_epochs", cfg.train.early_stop_patience_epochs);
        cfg.train.seed = t.value("seed", cfg.train.seed);
        cfg.train.verbose = t.value("verbose", cfg.train.verbose);
        cfg.train.log_every = t.value("log_every", cfg.train.log_every);
    }
    if (j.contains("gauss_newton")) {
        const auto& g = j["gauss_newton"];
        require_keys(g, "gauss_newton",
                     {"abs_tol", "step_tol", "max_iter", "safeguard", "max_step_norm"});
        cfg.gn.abs_tol = g.value("abs_tol", cfg.gn.abs_tol);
        cfg.gn.step_tol = g.value("step_tol", cfg.gn.step_tol);
        cfg.gn.max_iter = g.value("max_iter", cfg.gn.max_iter);
        cfg.gn.safeguard = g.value("safeguard", cfg.gn.safeguard);
        cfg.gn.max_step_norm = g.value("max_step_norm", cfg.gn.max_step_norm);
    }
    cfg.split_seed = j.value("split_seed", cfg.split_seed);
    if (j.contains("mu_sweep")) cfg.mu_sweep = j["mu_sweep"].get<std::vector<double>>();
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.timing_repetitions = j.value("timing_repetitions", cfg.timing_repetitions);
    if (cfg.mu_train.empty() || cfg.latent_dims.empty())
        throw ConfigError("config: mu_train and latent_dims must be non-empty");
    return cfg;
}

SnapshotMatrix trajectory_to_snapshots(const Trajectory& traj) {
    SnapshotMatrix m;
    m.data.resize(traj.grid.state_dim(), static_cast<Eigen::Index>(traj.states.size()));
    m.column_meta.resize(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        m.data.col(static_cast<Eigen::Index>(k)) = traj.states[k];
        m.column_meta[k] = {traj.config.mu, k};
    }
    return m;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

std::string ensure_parent(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    return path;
}

// FOM trajectories for the training parameter set.
std::vector<Trajectory> collect_training(const ExperimentConfig& cfg) {
    std::vector<Trajectory> trajs;
    for (double mu : cfg.mu_train) {
        FomConfig f = cfg.fom;
        f.mu = mu;
        std::fprintf(stderr, "fom: mu = %g...\n", mu);
        trajs.push_back(run_fom(cfg.grid, f));
    }
    return trajs;
}

MaskedAutoencoder train_model(const ExperimentConfig& cfg, int n_s,
                              const SnapshotMatrix& devs, const std::string& loss_csv) {
    const int n = cfg.grid.state_dim();
    const int h_e = cfg.enc_hidden > 0 ? cfg.enc_hidden : n;
    const int h_d = cfg.dec_hidden > 0 ? cfg.dec_hidden : 5 * n;
    MaskedAutoencoder model =
        make_autoencoder(n, h_e, h_d, n_s, cfg.mask_window, cfg.model_seed);
    const DatasetSplit split = split_dataset(devs.cols(), cfg.split_seed);
    const TrainReport report = train(model, devs, split, cfg.train);
    if (!loss_csv.empty()) {
        std::ofstream os(ensure_parent(loss_csv));
        if (!os) throw FormatError("cannot open '" + loss_csv + "' for writing", 0);
        os << "epoch,train_loss,validation_loss,learning_rate\n";
        for (std::size_t e = 0; e < report.train_loss.size(); ++e) {
            char line[128];
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", e,
                          report.train_loss[e], report.validation_loss[e],
                          report.learning_rate[e]);
            os << line;
        }
    }
    return model;
}

json report_to_json(const RomRunReport& r) {
    return json{{"method", r.method},
                {"mu", r.mu},
                {"n_latent", r.n_latent},
                {"n_r", r.n_r},
                {"n_z", r.n_z},
                {"max_rel_error", r.max_rel_error},
                {"wall_clock_seconds", r.wall_clock_seconds},
                {"fom_wall_clock_seconds", r.fom_wall_clock_seconds},
                {"speedup", r.speedup},
                {"failed", r.failed},
                {"failure_reason", r.failure_reason},
                {"gn_iters_mean", r.gn_iters_mean},
                {"gn_iters_max", r.gn_iters_max}};
}

void fill_gn_stats(RomRunReport& rep, const RomTrajectory& rom) {
    if (rom.gn_iterations.empty()) return;
    rep.gn_iters_mean =
        std::accumulate(rom.gn_iterations.begin(), rom.gn_iterations.end(), 0.0) /
        static_cast<double>(rom.gn_iterations.size());
    rep.gn_iters_max = *std::max_element(rom.gn_iterations.begin(),
                                         rom.gn_iterations.end());
}

// Runs one ROM method against an already-computed FOM reference.
RomRunReport run_method(const ExperimentConfig& cfg, const std::string& method,
                        double mu, const Trajectory& fom,
                        const MaskedAutoencoder* model, const ReducedBasis* basis,
                        const HyperReductionPlan* plan,
                        std::vector<Vec>* states_out = nullptr) {
    FomConfig f = cfg.fom;
    f.mu = mu;
    const Vec u_ref = initial_state(cfg.grid, mu);
    RomRunReport rep;
    rep.method = method;
    rep.mu = mu;
    rep.fom_wall_clock_seconds = fom.wall_clock_seconds;
    try {
        RomTrajectory rom;
        std::vector<Vec> states;
        if (method == "nm-lspg" || method == "nm-lspg-hr") {
            if (!model) throw ConfigError(method + " needs --model");
            rep.n_latent = model->n_latent;
            if (method == "nm-lspg") {
                rom = run_nm_lspg(cfg.grid, *model, u_ref, f, cfg.gn);
            } else {
                if (!plan) throw ConfigError(method + " needs --plan");
                rom = run_nm_lspg_hr(cfg.grid, *model, *plan, u_ref, f, cfg.gn);
            }
            states = decode_trajectory(*model, u_ref, rom);
        } else if (method == "ls-lspg" || method == "ls-lspg-hr") {
            if (!basis) throw ConfigError(method + " needs --basis");
            rep.n_latent = static_cast<int>(basis->phi.cols());
            if (method == "ls-lspg") {
                rom = run_ls_lspg(cfg.grid, *basis, u_ref, f, cfg.gn);
            } else {
                if (!plan) throw ConfigError(method + " needs --plan");
                rom = run_ls_lspg_hr(cfg.grid, *basis, *plan, u_ref, f, cfg.gn);
            }
            states = decode_trajectory(*basis, u_ref, rom);
        } else {
            throw ConfigError("unknown method '" + method + "'");
        }
        if (plan) {
            rep.n_r = plan->n_r;
            rep.n_z = static_cast<int>(plan->sample_indices.size());
        }
        rep.max_rel_error = max_rel_error(states, fom);
        rep.wall_clock_seconds = rom.wall_clock_seconds;
        rep.speedup = rom.wall_clock_seconds > 0.0
                          ? fom.wall_clock_seconds / rom.wall_clock_seconds
                          : 0.0;
        fill_gn_stats(rep, rom);
        if (states_out) *states_out = std::move(states);
    } catch (const NumericalError& e) {
        rep.failed = true;
        rep.failure_reason = e.what();
        rep.max_rel_error = 1.0;  // failed-run convention
    }
    return rep;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream os(ensure_parent(path));
    if (!os) throw FormatError("cannot open '" + path + "' for writing", 0);
    os << header << "\n";
    for (const auto& r : rows) os << r << "\n";
    if (!os) throw FormatError("write failure on '" + path + "'", 0);
}

std::string csv_row(const RomRunReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%d",
                  r.method.c_str(), r.mu, r.n_latent, r.n_r, r.n_z, r.max_rel_error,
                  r.wall_clock_seconds, r.fom_wall_clock_seconds, r.speedup,
                  r.failed ? 1 : 0);
    return buf;
}

constexpr const char* kReportHeader =
    "method,mu,n_latent,n_r,n_z,max_rel_error,wall_clock_seconds,"
    "fom_wall_clock_seconds,speedup,failed";

int dispatch(int argc, char** argv) {
    CLI::App app{"reduced-order-model workbench for 2D viscous Burgers"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON experiment config")->required();

    // shared overrides
    double mu_flag = std::numeric_limits<double>::quiet_NaN();
    std::string model_path, basis_path, plan_path, out, report_path, method;
    int k_flag = 0, n_z_flag = 0;

    auto* cmd_fom = app.add_subcommand("fom", "run the full-order model, write states");
    cmd_fom->add_option("--mu", mu_flag, "parameter (default: mu_target)");
    cmd_fom->add_option("--out", out, "output snapshot file");
    cmd_fom->add_option("--csv", report_path, "optional CSV copy of the states");

    auto* cmd_train = app.add_subcommand("train", "train the autoencoder on mu_train");
    cmd_train->add_option("--model", model_path, "model checkpoint output");
    cmd_train->add_option("--loss-csv", report_path, "per-epoch loss CSV output");
    cmd_train->add_option("--n-latent", k_flag, "latent dimension (default: first of latent_dims)");

    auto* cmd_basis = app.add_subcommand("basis", "POD basis from mu_train snapshots");
    cmd_basis->add_option("--k", k_flag, "number of modes (default: first of latent_dims)");
    cmd_basis->add_option("--out", out, "basis output file");

    auto* cmd_plan = app.add_subcommand("plan", "build a hyper-reduction plan");
    cmd_plan->add_option("--model", model_path, "decoder model (omit for an LS plan)");
    cmd_plan->add_option("--n-r", k_flag, "residual basis size")->required();
    cmd_plan->add_option("--n-z", n_z_flag, "sample count")->required();
    cmd_plan->add_option("--out", out, "plan output file");

    auto* cmd_rom = app.add_subcommand("rom", "run one ROM method against the FOM");
    cmd_rom->add_option("--method", method, "nm-lspg | ls-lspg | nm-lspg-hr | ls-lspg-hr")
        ->required();
    cmd_rom->add_option("--mu", mu_flag, "parameter (default: mu_target)");
    cmd_rom->add_option("--model", model_path, "autoencoder checkpoint");
    cmd_rom->add_option("--basis", basis_path, "POD basis file");
    cmd_rom->add_option("--plan", plan_path, "hyper-reduction plan file");
    cmd_rom->add_option("--report", report_path, "report JSON output");
    cmd_rom->add_option("--traj", out, "optional decoded trajectory snapshot file");

    auto* cmd_bench = app.add_subcommand(
        "bench", "latent-dimension and (n_r, n_z) sweeps at mu_target");
    cmd_bench->add_option("--model", model_path,
                          "reuse an existing checkpoint instead of training");

    auto* cmd_sweep = app.add_subcommand("sweep", "error over the mu_sweep grid");
    cmd_sweep->add_option("--model", model_path,
                          "reuse an existing checkpoint instead of training");

    CLI11_PARSE(app, argc, argv);
    const ExperimentConfig cfg = load_config(config_path);
    const double mu = std::isnan(mu_flag) ? cfg.mu_target : mu_flag;

    if (cmd_fom->parsed()) {
        FomConfig f = cfg.fom;
        f.mu = mu;
        const Trajectory traj = run_fom(cfg.grid, f);
        const SnapshotMatrix snaps = trajectory_to_snapshots(traj);
        const std::string path =
            out.empty() ? out_path(cfg, "fom_mu_" + std::to_string(mu) + ".bin") : out;
        write_snapshots(snaps, ensure_parent(path));
        if (!report_path.empty()) write_snapshots_csv(snaps, ensure_parent(report_path));
        std::printf("fom: %d steps, wall %.3f s -> %s\n", f.n_steps,
                    traj.wall_clock_seconds, path.c_str());
        return 0;
    }

    const auto trajs = collect_training(cfg);
    const SnapshotMatrix devs = assemble_training_set(trajs, RefPolicy::initial_state);

    if (cmd_train->parsed()) {
        const int n_s = k_flag > 0 ? k_flag : cfg.latent_dims.front();
        const std::string path = model_path.empty() ? out_path(cfg, "model.bin") : model_path;
        const std::string loss_csv =
            report_path.empty() ? out_path(cfg, "train_loss.csv") : report_path;
        MaskedAutoencoder model = train_model(cfg, n_s, devs, loss_csv);
        write_model(model, ensure_parent(path));
        std::printf("train: best validation %.3e -> %s\n",
                    model.train_report.best_validation_loss, path.c_str());
        return 0;
    }
    if (cmd_basis->parsed()) {
        const int k = k_flag > 0 ? k_flag : cfg.latent_dims.front();
        const ReducedBasis basis = compute_basis(devs, k);
        const std::string path = out.empty() ? out_path(cfg, "basis.bin") : out;
        write_basis(basis, ensure_parent(path));
        std::printf("basis: %d modes, sigma_1 %.3e -> %s\n", k,
                    basis.singular_values[0], path.c_str());
        return 0;
    }
    if (cmd_plan->parsed()) {
        const ReducedBasis residual_basis = compute_basis(devs, k_flag);
        MaskedAutoencoder model;
        const bool nm = !model_path.empty();
        if (nm) model = read_model(model_path);
        const HyperReductionPlan plan =
            make_plan(cfg.grid, residual_basis, n_z_flag, nm ? &model : nullptr);
        const std::string path = out.empty() ? out_path(cfg, "plan.bin") : out;
        write_plan(plan, ensure_parent(path));
        std::printf("plan: n_r %d, n_z %d, closure %zu -> %s\n", plan.n_r, n_z_flag,
                    plan.closure_outputs.size(), path.c_str());
        return 0;
    }

    if (cmd_rom->parsed()) {
        FomConfig f = cfg.fom;
        f.mu = mu;
        const Trajectory fom = run_fom(cfg.grid, f);
        MaskedAutoencoder model;
        ReducedBasis basis;
        HyperReductionPlan plan;
        const MaskedAutoencoder* model_p = nullptr;
        const ReducedBasis* basis_p = nullptr;
        const HyperReductionPlan* plan_p = nullptr;
        if (!model_path.empty()) {
            model = read_model(model_path);
            model_p = &model;
        }
        if (!basis_path.empty()) {
            basis = read_basis(basis_path);
            basis_p = &basis;
        }
        if (!plan_path.empty()) {
            plan = read_plan(plan_path);
            plan_p = &plan;
        }
        std::vector<Vec> states;
        const RomRunReport rep =
            run_method(cfg, method, mu, fom, model_p, basis_p, plan_p, &states);
        const json out_json = report_to_json(rep);
        const std::string path =
            report_path.empty() ? out_path(cfg, method + "_report.json") : report_path;
        std::ofstream os(ensure_parent(path));
        if (!os) throw FormatError("cannot open '" + path + "' for writing", 0);
        os << out_json.dump(2) << "\n";
        if (!out.empty() && !rep.failed) {
            SnapshotMatrix snaps;
            snaps.data.resize(cfg.grid.state_dim(),
                              static_cast<Eigen::Index>(states.size()));
            snaps.column_meta.resize(states.size());
            for (std::size_t k = 0; k < states.size(); ++k) {
                snaps.data.col(static_cast<Eigen::Index>(k)) = states[k];
                snaps.column_meta[k] = {mu, k};
            }
            write_snapshots(snaps, ensure_parent(out));
        }
        std::printf("%s\n", out_json.dump(2).c_str());
        return rep.failed ? 3 : 0;
    }

    if (cmd_bench->parsed() || cmd_sweep->parsed()) {
        FomConfig f = cfg.fom;
        f.mu = cfg.mu_target;
        const Trajectory fom = run_fom(cfg.grid, f);

        MaskedAutoencoder model;
        if (!model_path.empty()) {
            model = read_model(model_path);
        } else {
            std::fprintf(stderr, "training n_s = %d...\n", cfg.latent_dims.front());
            model = train_model(cfg, cfg.latent_dims.front(), devs,
                                out_path(cfg, "train_loss.csv"));
            write_model(model, out_path(cfg, "model.bin"));
        }

        if (cmd_sweep->parsed()) {
            std::vector<std::string> rows;
            for (double m : cfg.mu_sweep) {
                FomConfig fm = cfg.fom;
                fm.mu = m;
                const Trajectory ref = run_fom(cfg.grid, fm);
                const RomRunReport rep =
                    run_method(cfg, "nm-lspg", m, ref, &model, nullptr, nullptr);
                rows.push_back(csv_row(rep));
                std::printf("mu %.4f: max_rel_error %.3e%s\n", m, rep.max_rel_error,
                            rep.failed ? " (failed)" : "");
            }
            write_csv(out_path(cfg, "sweep.csv"), kReportHeader, rows);
            return 0;
        }

        // bench: latent sweep (the configured model covers its own n_s; other
        // latent dims train fresh models), then the (n_r, n_z) sweep.
        std::vector<std::string> latent_rows;
        for (int n_s : cfg.latent_dims) {
            MaskedAutoencoder m_ns;
            const MaskedAutoencoder* mp;
            if (n_s == model.n_latent) {
                mp = &model;
            } else {
                std::fprintf(stderr, "training n_s = %d...\n", n_s);
                m_ns = train_model(cfg, n_s, devs, "");
                mp = &m_ns;
            }
            const ReducedBasis basis = compute_basis(devs, n_s);
            latent_rows.push_back(
                csv_row(run_method(cfg, "nm-lspg", cfg.mu_target, fom, mp, nullptr, nullptr)));
            latent_rows.push_back(csv_row(
                run_method(cfg, "ls-lspg", cfg.mu_target, fom, nullptr, &basis, nullptr)));
        }
        write_csv(out_path(cfg, "bench_latent.csv"), kReportHeader, latent_rows);

        std::vector<std::string> hr_rows;
        const ReducedBasis trial = compute_basis(devs, model.n_latent);
        for (const auto& [n_r, n_z] : cfg.hr_budgets) {
            const ReducedBasis residual_basis = compute_basis(devs, n_r);
            try {
                const HyperReductionPlan nm_plan =
                    make_plan(cfg.grid, residual_basis, n_z, &model);
                hr_rows.push_back(csv_row(run_method(cfg, "nm-lspg-hr", cfg.mu_target,
                                                     fom, &model, nullptr, &nm_plan)));
                const HyperReductionPlan ls_plan =
                    make_plan(cfg.grid, residual_basis, n_z, nullptr);
                hr_rows.push_back(csv_row(run_method(cfg, "ls-lspg-hr", cfg.mu_target,
                                                     fom, nullptr, &trial, &ls_plan)));
            } catch (const NumericalError& e) {
                std::fprintf(stderr, "plan (%d, %d) failed: %s\n", n_r, n_z, e.what());
            }
        }
        write_csv(out_path(cfg, "bench_hr.csv"), kReportHeader, hr_rows);
        std::printf("bench: wrote %s and %s\n",
                    out_path(cfg, "bench_latent.csv").c_str(),
                    out_path(cfg, "bench_hr.csv").c_str());
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const StructuralError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
