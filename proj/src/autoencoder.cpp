#include "nmrom/autoencoder.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

namespace nmrom {

SparseMask build_mask(int n_out, int h_d, int window) {
    if (window < 1) throw ConfigError("build_mask: window must be >= 1");
    if (window > h_d) throw ConfigError("build_mask: window exceeds hidden size");
    if (h_d > window * n_out)
        throw ConfigError("build_mask: hidden units would be unreachable (h_d > window*n_out)");
    SparseMask mask;
    mask.rows = n_out;
    mask.cols = h_d;
    mask.row_ptr.resize(n_out + 1);
    mask.col_idx.reserve(static_cast<std::size_t>(n_out) * window);
    for (int i = 0; i < n_out; ++i) {
        mask.row_ptr[i] = static_cast<int>(mask.col_idx.size());
        int start = static_cast<int>(std::lround(static_cast<double>(i) * h_d / n_out));
        start = std::min(std::max(start, 0), h_d - window);
        for (int k = 0; k < window; ++k) mask.col_idx.push_back(start + k);
    }
    mask.row_ptr[n_out] = static_cast<int>(mask.col_idx.size());
    return mask;
}

void MaskedAutoencoder::check_shapes() const {
    const bool ok = enc_w1.rows() == enc_hidden && enc_w1.cols() == n_full &&
                    enc_b1.size() == enc_hidden && enc_w2.rows() == n_latent &&
                    enc_w2.cols() == enc_hidden && enc_b2.size() == n_latent &&
                    dec_w1.rows() == dec_hidden && dec_w1.cols() == n_latent &&
                    dec_b1.size() == dec_hidden && mask.rows == n_full &&
                    mask.cols == dec_hidden &&
                    dec_w2.size() == static_cast<std::size_t>(mask.nnz()) &&
                    dec_b2.size() == n_full && n_latent < n_full;
    if (!ok) throw StructuralError("MaskedAutoencoder: inconsistent shapes");
}

Mat kaiming_init(int rows, int cols, int fan_in, std::uint64_t seed) {
    if (fan_in < 1) throw ConfigError("kaiming_init: fan_in must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
    Mat w(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) w(r, c) = dist(rng);
    return w;
}

MaskedAutoencoder make_autoencoder(int n_full, int enc_hidden, int dec_hidden,
                                   int n_latent, int mask_window,
                                   std::uint64_t seed) {
    if (n_latent >= n_full)
        throw ConfigError("make_autoencoder: latent dimension must be < N");
    MaskedAutoencoder m;
    m.n_full = n_full;
    m.enc_hidden = enc_hidden;
    m.dec_hidden = dec_hidden;
    m.n_latent = n_latent;
    m.enc_w1 = kaiming_init(enc_hidden, n_full, n_full, seed);
    m.enc_b1 = Vec::Zero(enc_hidden);
    m.enc_w2 = kaiming_init(n_latent, enc_hidden, enc_hidden, seed + 1);
    m.enc_b2 = Vec::Zero(n_latent);
    m.dec_w1 = kaiming_init(dec_hidden, n_latent, n_latent, seed + 2);
    m.dec_b1 = Vec::Zero(dec_hidden);
    m.mask = build_mask(n_full, dec_hidden, mask_window);
    // Only unmasked positions exist in storage, so masked entries are zero by
    // construction; values are still drawn per-entry from the row's fan-in.
    {
        std::mt19937_64 rng(seed + 3);
        std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / dec_hidden));
        m.dec_w2.resize(m.mask.col_idx.size());
        for (auto& v : m.dec_w2) v = dist(rng);
    }
    m.dec_b2 = Vec::Zero(n_full);
    m.u_ref = Vec::Zero(n_full);
    m.check_shapes();
    return m;
}

Vec encode(const MaskedAutoencoder& model, const Vec& u_dev) {
    if (u_dev.size() != model.n_full)
        throw StructuralError("encode: input size != N");
    Vec h = model.enc_w1 * u_dev + model.enc_b1;
    for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = swish(h[i]);
    return model.enc_w2 * h + model.enc_b2;
}

namespace {

// Scalar accumulation in fixed index order, so a pruned decoder evaluating
// the same hidden unit reproduces the full decoder bit for bit.
inline double hidden_pre(const Mat& w1, const Vec& b1, const Vec& z, Eigen::Index k) {
    double acc = b1[k];
    for (Eigen::Index c = 0; c < z.size(); ++c) acc += w1(k, c) * z[c];
    return acc;
}

}  // namespace

Vec decode(const MaskedAutoencoder& model, const Vec& z) {
    if (z.size() != model.n_latent)
        throw StructuralError("decode: input size != n_latent");
    Vec h(model.dec_hidden);
    for (Eigen::Index i = 0; i < h.size(); ++i)
        h[i] = swish(hidden_pre(model.dec_w1, model.dec_b1, z, i));
    Vec y = model.dec_b2;
    for (int r = 0; r < model.mask.rows; ++r) {
        double acc = 0.0;
        for (int p = model.mask.row_ptr[r]; p < model.mask.row_ptr[r + 1]; ++p)
            acc += model.dec_w2[p] * h[model.mask.col_idx[p]];
        y[r] += acc;
    }
    return y;
}

Mat decoder_jacobian(const MaskedAutoencoder& model, const Vec& z) {
    if (z.size() != model.n_latent)
        throw StructuralError("decoder_jacobian: input size != n_latent");
    Vec hp(model.dec_hidden);
    for (Eigen::Index i = 0; i < hp.size(); ++i)
        hp[i] = swish_prime(hidden_pre(model.dec_w1, model.dec_b1, z, i));
    Mat jac = Mat::Zero(model.n_full, model.n_latent);
    for (int r = 0; r < model.mask.rows; ++r) {
        for (int p = model.mask.row_ptr[r]; p < model.mask.row_ptr[r + 1]; ++p) {
            const int k = model.mask.col_idx[p];
            jac.row(r) += model.dec_w2[p] * hp[k] * model.dec_w1.row(k);
        }
    }
    return jac;
}

void mask_matvec(const SparseMask& mask, const std::vector<double>& vals,
                 const Mat& dense_in, Mat& out) {
    // out (rows x B) += W2 * dense_in (cols x B)
    for (int r = 0; r < mask.rows; ++r)
        for (int p = mask.row_ptr[r]; p < mask.row_ptr[r + 1]; ++p)
            out.row(r) += vals[p] * dense_in.row(mask.col_idx[p]);
}

double nm_projection_error(const MaskedAutoencoder& model, const Trajectory& traj,
                           const Vec& u_ref) {
    if (u_ref.size() != model.n_full)
        throw StructuralError("nm_projection_error: dimension mismatch");
    double worst = 0.0;
    for (const auto& u : traj.states) {
        const Vec recon = u_ref + decode(model, encode(model, u - u_ref));
        const double denom = u.norm();
        if (denom > 0.0) worst = std::max(worst, (recon - u).norm() / denom);
    }
    return worst;
}

namespace {

constexpr char kMagic[8] = {'R', 'O', 'M', 'A', 'E', '0', '0', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_mat(std::ostream& os, const Mat& m) {
    os.write(reinterpret_cast<const char*>(m.data()),
             static_cast<std::streamsize>(sizeof(double) * m.size()));
}
void put_vec(std::ostream& os, const Vec& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(sizeof(double) * v.size()));
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
            throw FormatError(std::string("truncated model file while reading ") + what,
                              offset);
        offset += n;
    }
    std::uint64_t get_u64(const char* what) {
        std::uint64_t v;
        read_raw(&v, sizeof v, what);
        return v;
    }
    void get_mat(Mat& m, const char* what) {
        read_raw(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()), what);
    }
    void get_vec(Vec& v, const char* what) {
        read_raw(v.data(), sizeof(double) * static_cast<std::size_t>(v.size()), what);
    }
};

}  // namespace

void write_model(const MaskedAutoencoder& model, const std::string& path) {
    model.check_shapes();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open '" + path + "' for writing", 0);
    os.write(kMagic, sizeof kMagic);
    put_u64(os, static_cast<std::uint64_t>(model.n_full));
    put_u64(os, static_cast<std::uint64_t>(model.enc_hidden));
    put_u64(os, static_cast<std::uint64_t>(model.dec_hidden));
    put_u64(os, static_cast<std::uint64_t>(model.n_latent));
    put_u64(os, static_cast<std::uint64_t>(model.activation));
    put_u64(os, static_cast<std::uint64_t>(model.ref_policy));
    put_mat(os, model.enc_w1);
    put_vec(os, model.enc_b1);
    put_mat(os, model.enc_w2);
    put_vec(os, model.enc_b2);
    put_mat(os, model.dec_w1);
    put_vec(os, model.dec_b1);
    put_u64(os, static_cast<std::uint64_t>(model.mask.nnz()));
    for (int v : model.mask.row_ptr) put_u64(os, static_cast<std::uint64_t>(v));
    for (int v : model.mask.col_idx) put_u64(os, static_cast<std::uint64_t>(v));
    os.write(reinterpret_cast<const char*>(model.dec_w2.data()),
             static_cast<std::streamsize>(sizeof(double) * model.dec_w2.size()));
    put_vec(os, model.dec_b2);
    put_vec(os, model.u_ref);
    if (!os) throw FormatError("write failure on '" + path + "'", 0);
}

MaskedAutoencoder read_model(const std::string& path) {
    Reader rd(path);
    char magic[8];
    rd.read_raw(magic, sizeof magic, "magic");
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw FormatError("bad magic, not a ROMAE001 file", 0);
    MaskedAutoencoder m;
    m.n_full = static_cast<int>(rd.get_u64("N"));
    m.enc_hidden = static_cast<int>(rd.get_u64("enc_hidden"));
    m.dec_hidden = static_cast<int>(rd.get_u64("dec_hidden"));
    m.n_latent = static_cast<int>(rd.get_u64("n_latent"));
    m.activation = static_cast<Activation>(rd.get_u64("activation"));
    m.ref_policy = static_cast<ReferencePolicy>(rd.get_u64("ref_policy"));
    m.enc_w1.resize(m.enc_hidden, m.n_full);
    rd.get_mat(m.enc_w1, "enc_w1");
    m.enc_b1.resize(m.enc_hidden);
    rd.get_vec(m.enc_b1, "enc_b1");
    m.enc_w2.resize(m.n_latent, m.enc_hidden);
    rd.get_mat(m.enc_w2, "enc_w2");
    m.enc_b2.resize(m.n_latent);
    rd.get_vec(m.enc_b2, "enc_b2");
    m.dec_w1.resize(m.dec_hidden, m.n_latent);
    rd.get_mat(m.dec_w1, "dec_w1");
    m.dec_b1.resize(m.dec_hidden);
    rd.get_vec(m.dec_b1, "dec_b1");
    const auto nnz = rd.get_u64("mask nnz");
    m.mask.rows = m.n_full;
    m.mask.cols = m.dec_hidden;
    m.mask.row_ptr.resize(m.n_full + 1);
    for (auto& v : m.mask.row_ptr) v = static_cast<int>(rd.get_u64("mask row_ptr"));
    m.mask.col_idx.resize(nnz);
    for (auto& v : m.mask.col_idx) v = static_cast<int>(rd.get_u64("mask col_idx"));
    m.dec_w2.resize(nnz);
    rd.read_raw(m.dec_w2.data(), sizeof(double) * nnz, "dec_w2");
    m.dec_b2.resize(m.n_full);
    rd.get_vec(m.dec_b2, "dec_b2");
    m.u_ref.resize(m.n_full);
    rd.get_vec(m.u_ref, "u_ref");
    m.check_shapes();
    return m;
}

}  // namespace nmrom
