// Gappy-POD hyper-reduction: greedy sample selection, precomputed sampled
// pseudo-inverse, stencil dependency closure, decoder subnet extraction, and
// the hyper-reduced variants of both LSPG solvers. Per-step cost depends only
// on (n_z, closure size, subnet size), never on N.
#pragma once
#include <string>
#include <vector>

#include "nmrom/lspg.hpp"

namespace nmrom {

// Pruned decoder evaluating only a subset of output rows. Hidden units with
// no surviving mask connection are dropped from dec_w1/dec_b1.
struct DecoderSubnet {
    std::vector<int> outputs;       // global decoder output indices, sorted
    std::vector<int> hidden_units;  // global hidden indices kept, sorted
    Mat dec_w1;                     // |hidden| x n_s
    Vec dec_b1;
    SparseMask mask;                // |outputs| x |hidden|, local indices
    std::vector<double> dec_w2;
    Vec dec_b2;                     // |outputs|
    int n_latent = 0;

    // When set, every multiply-accumulate in subnet evaluation is counted.
    mutable long* mac_counter = nullptr;
};

Vec subnet_decode(const DecoderSubnet& net, const Vec& z);
Mat subnet_jacobian(const DecoderSubnet& net, const Vec& z);

struct HyperReductionPlan {
    std::vector<int> sample_indices;  // n_z residual rows, selection order
    int n_r = 0;
    Mat pseudo_inverse;               // n_r x n_z, (Z^T Phi_r)^+
    std::vector<int> closure_outputs; // decoder outputs needed, sorted

    // Per sampled row: positions into closure_outputs for the stencil.
    // -1 marks a neighbor on the Dirichlet boundary (value 0).
    struct Stencil {
        int self;       // the sampled row itself
        int u_center;   // u component at the node
        int v_center;   // v component at the node
        int west, east, south, north;  // own component neighbors
    };
    std::vector<Stencil> stencils;

    DecoderSubnet subnet;     // built on closure_outputs (NM plans)
    bool has_subnet = false;
};

// Greedy DEIM selection with cyclic oversampling. The first n_r picks follow
// the classic interpolation-residual rule; the remaining n_z - n_r cycle over
// basis columns, each time adding the row with the largest leave-one-column-out
// gappy reconstruction error. Ties break toward the lowest index.
std::vector<int> select_sample_indices(const Mat& phi_r, int n_z);

// (Z^T Phi_r)^+ via a rank-revealing QR. Throws NumericalError when the
// sampled block's smallest singular value is <= 1e-12.
Mat precompute_pseudo_inverse(const Mat& phi_r, const std::vector<int>& indices);

// Decoder outputs needed to evaluate the sampled residual rows: both
// components at each sampled node plus its interior stencil neighbors.
std::vector<int> stencil_closure(const std::vector<int>& sample_indices,
                                 const GridSpec& grid);

// Restricts the masked output layer to `outputs` and prunes unreachable
// hidden units. Agrees with the full decoder on those rows exactly.
DecoderSubnet build_subnet(const MaskedAutoencoder& model,
                           const std::vector<int>& outputs);

// Full plan construction. Pass model = nullptr for LS plans (no subnet).
HyperReductionPlan make_plan(const GridSpec& grid, const ReducedBasis& residual_basis,
                             int n_z, const MaskedAutoencoder* model);

// (Z^T Phi_r)^+ Z^T r_BE(z_n; z_prev), length n_r, evaluated through the
// subnet and pointwise stencil arithmetic only.
Vec hr_residual(const GridSpec& grid, const HyperReductionPlan& plan,
                const Vec& u_ref_closure, const Vec& z_n, const Vec& z_prev,
                const FomConfig& cfg);
Mat hr_residual_jacobian(const GridSpec& grid, const HyperReductionPlan& plan,
                         const Vec& u_ref_closure, const Vec& z_n,
                         const FomConfig& cfg);

RomTrajectory run_nm_lspg_hr(const GridSpec& grid, const MaskedAutoencoder& model,
                             const HyperReductionPlan& plan, const Vec& u_ref,
                             const FomConfig& cfg, const GaussNewtonConfig& gn);
RomTrajectory run_ls_lspg_hr(const GridSpec& grid, const ReducedBasis& basis,
                             const HyperReductionPlan& plan, const Vec& u_ref,
                             const FomConfig& cfg, const GaussNewtonConfig& gn);

// "ROMHRPL1" plan file: indices, pseudo-inverse, closure, then the subnet
// tensors when present.
void write_plan(const HyperReductionPlan& plan, const std::string& path);
HyperReductionPlan read_plan(const std::string& path);

}  // namespace nmrom
