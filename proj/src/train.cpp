#include "nmrom/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

namespace nmrom {

namespace {

void apply_swish(Mat& pre, Mat& post) {
    post.resize(pre.rows(), pre.cols());
    const double* in = pre.data();
    double* out = post.data();
    for (Eigen::Index i = 0; i < pre.size(); ++i) out[i] = swish(in[i]);
}

void swish_prime_inplace(const Mat& pre, Mat& delta) {
    const double* in = pre.data();
    double* d = delta.data();
    for (Eigen::Index i = 0; i < pre.size(); ++i) d[i] *= swish_prime(in[i]);
}

struct ForwardCache {
    Mat h1, a1, z, h2, a2, y;
};

double forward(const MaskedAutoencoder& m, const Mat& x, ForwardCache& c) {
    c.h1.noalias() = m.enc_w1 * x;
    c.h1.colwise() += m.enc_b1;
    apply_swish(c.h1, c.a1);
    c.z.noalias() = m.enc_w2 * c.a1;
    c.z.colwise() += m.enc_b2;
    c.h2.noalias() = m.dec_w1 * c.z;
    c.h2.colwise() += m.dec_b1;
    apply_swish(c.h2, c.a2);
    c.y = Mat::Zero(m.n_full, x.cols());
    c.y.colwise() += m.dec_b2;
    mask_matvec(m.mask, m.dec_w2, c.a2, c.y);
    return (c.y - x).squaredNorm() / static_cast<double>(x.size());
}

}  // namespace

double evaluate_loss(const MaskedAutoencoder& model, const Mat& batch) {
    ForwardCache c;
    return forward(model, batch, c);
}

double loss_and_gradients(const MaskedAutoencoder& model, const Mat& batch,
                          ModelGradients& g) {
    ForwardCache c;
    const double loss = forward(model, batch, c);

    g.enc_w1.resize(model.enc_w1.rows(), model.enc_w1.cols());
    g.enc_w2.resize(model.enc_w2.rows(), model.enc_w2.cols());
    g.dec_w1.resize(model.dec_w1.rows(), model.dec_w1.cols());

    Mat d_y = (2.0 / static_cast<double>(batch.size())) * (c.y - batch);
    g.dec_b2 = d_y.rowwise().sum();
    g.dec_w2.assign(model.dec_w2.size(), 0.0);
    Mat d_a2 = Mat::Zero(model.dec_hidden, batch.cols());
    const auto& mask = model.mask;
    for (int r = 0; r < mask.rows; ++r) {
        for (int p = mask.row_ptr[r]; p < mask.row_ptr[r + 1]; ++p) {
            const int k = mask.col_idx[p];
            g.dec_w2[p] = d_y.row(r).dot(c.a2.row(k));
            d_a2.row(k) += model.dec_w2[p] * d_y.row(r);
        }
    }
    swish_prime_inplace(c.h2, d_a2);  // d_a2 is now d_h2
    g.dec_w1.noalias() = d_a2 * c.z.transpose();
    g.dec_b1 = d_a2.rowwise().sum();
    Mat d_z = model.dec_w1.transpose() * d_a2;
    g.enc_w2.noalias() = d_z * c.a1.transpose();
    g.enc_b2 = d_z.rowwise().sum();
    Mat d_a1 = model.enc_w2.transpose() * d_z;
    swish_prime_inplace(c.h1, d_a1);  // d_a1 is now d_h1
    g.enc_w1.noalias() = d_a1 * batch.transpose();
    g.enc_b1 = d_a1.rowwise().sum();
    return loss;
}

namespace {

struct ParamView {
    double* param;
    const double* grad;
    std::size_t n;
};

std::vector<ParamView> views(MaskedAutoencoder& m, const ModelGradients& g) {
    return {
        {m.enc_w1.data(), g.enc_w1.data(), static_cast<std::size_t>(m.enc_w1.size())},
        {m.enc_b1.data(), g.enc_b1.data(), static_cast<std::size_t>(m.enc_b1.size())},
        {m.enc_w2.data(), g.enc_w2.data(), static_cast<std::size_t>(m.enc_w2.size())},
        {m.enc_b2.data(), g.enc_b2.data(), static_cast<std::size_t>(m.enc_b2.size())},
        {m.dec_w1.data(), g.dec_w1.data(), static_cast<std::size_t>(m.dec_w1.size())},
        {m.dec_b1.data(), g.dec_b1.data(), static_cast<std::size_t>(m.dec_b1.size())},
        {m.dec_w2.data(), g.dec_w2.data(), m.dec_w2.size()},
        {m.dec_b2.data(), g.dec_b2.data(), static_cast<std::size_t>(m.dec_b2.size())},
    };
}

class Adam {
public:
    explicit Adam(std::size_t total) : m_(total, 0.0), v_(total, 0.0) {}

    void step(std::vector<ParamView>& params, double lr) {
        ++t_;
        const double bc1 = 1.0 - std::pow(beta1_, t_);
        const double bc2 = 1.0 - std::pow(beta2_, t_);
        std::size_t off = 0;
        for (auto& pv : params) {
            for (std::size_t i = 0; i < pv.n; ++i) {
                const double grad = pv.grad[i];
                double& mo = m_[off + i];
                double& vo = v_[off + i];
                mo = beta1_ * mo + (1.0 - beta1_) * grad;
                vo = beta2_ * vo + (1.0 - beta2_) * grad * grad;
                pv.param[i] -= lr * (mo / bc1) / (std::sqrt(vo / bc2) + eps_);
            }
            off += pv.n;
        }
    }

private:
    static constexpr double beta1_ = 0.9;
    static constexpr double beta2_ = 0.999;
    static constexpr double eps_ = 1e-8;
    std::vector<double> m_;
    std::vector<double> v_;
    long t_ = 0;
};

struct Checkpoint {
    Mat enc_w1, enc_w2, dec_w1;
    Vec enc_b1, enc_b2, dec_b1, dec_b2;
    std::vector<double> dec_w2;

    void save(const MaskedAutoencoder& m) {
        enc_w1 = m.enc_w1;
        enc_b1 = m.enc_b1;
        enc_w2 = m.enc_w2;
        enc_b2 = m.enc_b2;
        dec_w1 = m.dec_w1;
        dec_b1 = m.dec_b1;
        dec_w2 = m.dec_w2;
        dec_b2 = m.dec_b2;
    }
    void restore(MaskedAutoencoder& m) const {
        m.enc_w1 = enc_w1;
        m.enc_b1 = enc_b1;
        m.enc_w2 = enc_w2;
        m.enc_b2 = enc_b2;
        m.dec_w1 = dec_w1;
        m.dec_b1 = dec_b1;
        m.dec_w2 = dec_w2;
        m.dec_b2 = dec_b2;
    }
};

Mat gather(const Mat& data, const std::vector<int>& idx, std::size_t begin,
           std::size_t end) {
    Mat out(data.rows(), static_cast<Eigen::Index>(end - begin));
    for (std::size_t i = begin; i < end; ++i)
        out.col(static_cast<Eigen::Index>(i - begin)) = data.col(idx[i]);
    return out;
}

}  // namespace

TrainReport train(MaskedAutoencoder& model, const SnapshotMatrix& data,
                  const DatasetSplit& split, const TrainConfig& cfg) {
    cfg.validate();
    model.check_shapes();
    if (data.rows() != model.n_full)
        throw StructuralError("train: snapshot rows != model input width");
    if (split.train_indices.empty() || split.validation_indices.empty())
        throw StructuralError("train: empty split");

    std::vector<int> order = split.train_indices;
    const Mat validation = gather(data.data, split.validation_indices, 0,
                                  split.validation_indices.size());

    ModelGradients grads;
    const std::size_t total =
        static_cast<std::size_t>(model.enc_w1.size() + model.enc_b1.size() +
                                 model.enc_w2.size() + model.enc_b2.size() +
                                 model.dec_w1.size() + model.dec_b1.size() +
                                 model.dec_b2.size()) +
        model.dec_w2.size();
    Adam adam(total);

    std::mt19937_64 rng(cfg.seed);
    TrainReport report;
    Checkpoint best;
    best.save(model);
    double lr = cfg.initial_lr;
    double best_train = std::numeric_limits<double>::infinity();
    double best_val = std::numeric_limits<double>::infinity();
    int plateau_count = 0;
    int stale_val = 0;

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        std::size_t seen = 0;
        for (std::size_t b = 0; b < order.size(); b += cfg.batch_size) {
            const std::size_t e = std::min(order.size(), b + cfg.batch_size);
            const Mat batch = gather(data.data, order, b, e);
            const double loss = loss_and_gradients(model, batch, grads);
            if (!std::isfinite(loss))
                throw NumericalError("train: non-finite loss at epoch " +
                                     std::to_string(epoch));
            auto pv = views(model, grads);
            adam.step(pv, lr);
            loss_sum += loss * static_cast<double>(e - b);
            seen += e - b;
        }
        const double train_loss = loss_sum / static_cast<double>(seen);
        const double val_loss = evaluate_loss(model, validation);
        if (!std::isfinite(val_loss))
            throw NumericalError("train: non-finite validation loss at epoch " +
                                 std::to_string(epoch));
        report.train_loss.push_back(train_loss);
        report.validation_loss.push_back(val_loss);
        report.learning_rate.push_back(lr);
        if (cfg.verbose && (epoch % cfg.log_every == 0 || epoch == cfg.max_epochs - 1))
            std::fprintf(stderr, "epoch %d train %.3e val %.3e lr %.1e\n", epoch,
                         train_loss, val_loss, lr);

        if (train_loss < best_train) {
            best_train = train_loss;
            plateau_count = 0;
        } else if (++plateau_count >= cfg.plateau_patience_epochs) {
            lr /= cfg.lr_decay_factor;
            plateau_count = 0;
        }

        if (val_loss < best_val) {
            best_val = val_loss;
            report.best_epoch = epoch;
            stale_val = 0;
            best.save(model);
        } else if (++stale_val >= cfg.early_stop_patience_epochs) {
            report.early_stopped = true;
            break;
        }
    }
    best.restore(model);
    report.best_validation_loss = best_val;
    model.train_report = report;
    return report;
}

}  // namespace nmrom
