// Shallow masked autoencoder: fully-connected encoder, two-layer decoder whose
// output layer is sparsely connected through a locality mask. The decoder is
// the nonlinear trial manifold used by the ROM solvers; its last layer has no
// activation so the decoder Jacobian is cheap and exact.
#pragma once
#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "nmrom/fom.hpp"

namespace nmrom {

// CSR pattern of the decoder output layer. Rows are decoder outputs (state
// entries), columns are decoder hidden units. Every row is a contiguous
// window, but consumers only rely on the CSR view.
struct SparseMask {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;  // rows + 1
    std::vector<int> col_idx;  // nnz

    int nnz() const { return static_cast<int>(col_idx.size()); }
};

// Row i is connected to `window` hidden indices starting at
// clamp(round(i*h_d/n_out), 0, h_d-window). Requires every hidden unit to be
// reachable from some output (guaranteed when h_d <= window*n_out).
SparseMask build_mask(int n_out, int h_d, int window);

enum class Activation : std::uint64_t { swish = 0 };

inline double swish(double x) { return x / (1.0 + std::exp(-x)); }
inline double swish_prime(double x) {
    const double s = 1.0 / (1.0 + std::exp(-x));
    return s * (1.0 + x * (1.0 - s));
}

struct TrainReport {
    std::vector<double> train_loss;       // per epoch
    std::vector<double> validation_loss;  // per epoch
    std::vector<double> learning_rate;    // per epoch
    int best_epoch = -1;
    double best_validation_loss = 0.0;
    bool early_stopped = false;
};

enum class ReferencePolicy : std::uint64_t { raw = 0, initial_state = 1 };

struct MaskedAutoencoder {
    int n_full = 0;     // N, encoder input and decoder output width
    int enc_hidden = 0; // h_e
    int dec_hidden = 0; // h_d
    int n_latent = 0;   // n_s

    Mat enc_w1;  // h_e x N
    Vec enc_b1;  // h_e
    Mat enc_w2;  // n_s x h_e
    Vec enc_b2;  // n_s
    Mat dec_w1;  // h_d x n_s
    Vec dec_b1;  // h_d
    SparseMask mask;              // pattern of the N x h_d output layer
    std::vector<double> dec_w2;   // values aligned with mask.col_idx
    Vec dec_b2;  // N

    Activation activation = Activation::swish;
    ReferencePolicy ref_policy = ReferencePolicy::initial_state;
    Vec u_ref;   // reference state the training deviations were taken against
    TrainReport train_report;

    // Layer sizes consistent, mask matches (n_full, dec_hidden).
    void check_shapes() const;
};

// Kaiming-initialized model with zero biases. The masked output layer draws
// only its unmasked entries; everything is a function of the seed alone.
MaskedAutoencoder make_autoencoder(int n_full, int enc_hidden, int dec_hidden,
                                   int n_latent, int mask_window,
                                   std::uint64_t seed);

// i.i.d. normal entries with variance 2/fan_in.
Mat kaiming_init(int rows, int cols, int fan_in, std::uint64_t seed);

Vec encode(const MaskedAutoencoder& model, const Vec& u_dev);
// g(z); callers add u_ref to obtain a full state.
Vec decode(const MaskedAutoencoder& model, const Vec& z);
// Analytic d(decode)/dz, N x n_s.
Mat decoder_jacobian(const MaskedAutoencoder& model, const Vec& z);

// Sparse output-layer product helpers (y += W2 * a and a += W2^T * y).
void mask_matvec(const SparseMask& mask, const std::vector<double>& vals,
                 const Mat& dense_in, Mat& out);

// max_n || u_ref + g(E(u^n - u_ref)) - u^n || / || u^n ||
double nm_projection_error(const MaskedAutoencoder& model, const Trajectory& traj,
                           const Vec& u_ref);

// "ROMAE001" checkpoint: magic, u64 header (N, h_e, h_d, n_s, activation,
// ref policy), tensors in declaration order as little-endian f64, mask as
// u64 row_ptr/col_idx lists, then u_ref.
void write_model(const MaskedAutoencoder& model, const std::string& path);
MaskedAutoencoder read_model(const std::string& path);

}  // namespace nmrom
