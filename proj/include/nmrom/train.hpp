// From-scratch training for the masked autoencoder: mini-batch Adam on MSE,
// learning-rate drop on training-loss plateau, early stopping on validation
// loss, best-validation checkpointing.
#pragma once
#include <cstdint>

#include "nmrom/autoencoder.hpp"
#include "nmrom/snapshot.hpp"

namespace nmrom {

struct TrainConfig {
    double initial_lr = 1e-3;
    int plateau_patience_epochs = 10;
    double lr_decay_factor = 10.0;
    int batch_size = 240;
    int max_epochs = 10000;
    int early_stop_patience_epochs = 200;
    std::uint64_t seed = 0;
    bool verbose = false;
    int log_every = 100;

    void validate() const {
        if (!(initial_lr > 0.0)) throw ConfigError("TrainConfig: initial_lr must be > 0");
        if (!(lr_decay_factor > 1.0))
            throw ConfigError("TrainConfig: lr_decay_factor must be > 1");
        if (batch_size < 1 || max_epochs < 1 || plateau_patience_epochs < 1 ||
            early_stop_patience_epochs < 1)
            throw ConfigError("TrainConfig: counts must be positive");
    }
};

// Gradients of the batch MSE with respect to every parameter tensor, in the
// same shapes as the model. dec_w2 is aligned with the mask pattern, so the
// masked-out entries have no gradient and can never move off zero.
struct ModelGradients {
    Mat enc_w1;
    Vec enc_b1;
    Mat enc_w2;
    Vec enc_b2;
    Mat dec_w1;
    Vec dec_b1;
    std::vector<double> dec_w2;
    Vec dec_b2;
};

// Forward + backward over a batch of deviation columns (N x B).
// Returns the MSE loss (averaged over batch and state entries).
double loss_and_gradients(const MaskedAutoencoder& model, const Mat& batch,
                          ModelGradients& grads);

// Forward-only MSE over a batch.
double evaluate_loss(const MaskedAutoencoder& model, const Mat& batch);

// Trains in place; the model left in `model` is the best-validation
// checkpoint. Throws NumericalError (with the epoch index) on NaN loss.
TrainReport train(MaskedAutoencoder& model, const SnapshotMatrix& data,
                  const DatasetSplit& split, const TrainConfig& cfg);

}  // namespace nmrom
