#include "nmrom/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

namespace nmrom {

namespace {

constexpr char kMagic[8] = {'R', 'O', 'M', 'S', 'N', 'A', 'P', '1'};
constexpr std::uint64_t kFlagHasRef = 1;

// This code assumes a little-endian host, as does every target we build on.
void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
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
            throw FormatError(std::string("truncated file while reading ") + what, offset);
        offset += n;
    }
    std::uint64_t get_u64(const char* what) {
        std::uint64_t v;
        read_raw(&v, sizeof v, what);
        return v;
    }
    double get_f64(const char* what) {
        double v;
        read_raw(&v, sizeof v, what);
        return v;
    }
};

}  // namespace

void write_snapshots(const SnapshotMatrix& m, const std::string& path) {
    if (m.column_meta.size() != static_cast<std::size_t>(m.cols()))
        throw StructuralError("write_snapshots: column_meta length != column count");
    if (m.reference_state && m.reference_state->size() != m.rows())
        throw StructuralError("write_snapshots: reference state length != row count");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open '" + path + "' for writing", 0);
    os.write(kMagic, sizeof kMagic);
    put_u64(os, static_cast<std::uint64_t>(m.rows()));
    put_u64(os, static_cast<std::uint64_t>(m.cols()));
    put_u64(os, m.reference_state ? kFlagHasRef : 0);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) put_f64(os, m.data(r, c));
    for (const auto& cm : m.column_meta) {
        put_f64(os, cm.mu);
        put_u64(os, cm.time_index);
    }
    if (m.reference_state)
        for (Eigen::Index r = 0; r < m.rows(); ++r) put_f64(os, (*m.reference_state)[r]);
    if (!os) throw FormatError("write failure on '" + path + "'", 0);
}

SnapshotMatrix read_snapshots(const std::string& path) {
    Reader rd(path);
    char magic[8];
    rd.read_raw(magic, sizeof magic, "magic");
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw FormatError("bad magic, not a ROMSNAP1 file", 0);
    const std::uint64_t rows = rd.get_u64("row count");
    const std::uint64_t cols = rd.get_u64("column count");
    if (rows > (1ull << 32) || cols > (1ull << 32))
        throw FormatError("dimension overflow", 8);
    const std::uint64_t flags = rd.get_u64("flags");
    SnapshotMatrix m;
    m.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t c = 0; c < cols; ++c)
        for (std::uint64_t r = 0; r < rows; ++r)
            m.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                rd.get_f64("matrix data");
    m.column_meta.resize(cols);
    for (auto& cm : m.column_meta) {
        cm.mu = rd.get_f64("column mu");
        cm.time_index = rd.get_u64("column time index");
    }
    if (flags & kFlagHasRef) {
        Vec ref(static_cast<Eigen::Index>(rows));
        for (std::uint64_t r = 0; r < rows; ++r)
            ref[static_cast<Eigen::Index>(r)] = rd.get_f64("reference state");
        m.reference_state = std::move(ref);
    }
    if (!m.data.allFinite())
        throw FormatError("matrix data contains non-finite values", 24);
    return m;
}

void write_snapshots_csv(const SnapshotMatrix& m, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw FormatError("cannot open '" + path + "' for writing", 0);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            std::fprintf(f, c == 0 ? "%.17g" : ",%.17g", m.data(r, c));
        std::fputc('\n', f);
    }
    std::fclose(f);
}

SnapshotMatrix assemble_training_set(const std::vector<Trajectory>& trajectories,
                                     RefPolicy policy) {
    if (trajectories.empty())
        throw StructuralError("assemble_training_set: no trajectories");
    const GridSpec grid = trajectories.front().grid;
    Eigen::Index total = 0;
    for (const auto& t : trajectories) {
        if (!(t.grid == grid))
            throw StructuralError("assemble_training_set: trajectories on different grids");
        total += static_cast<Eigen::Index>(t.states.size());
    }
    SnapshotMatrix m;
    m.data.resize(grid.state_dim(), total);
    m.column_meta.resize(total);
    Eigen::Index col = 0;
    for (const auto& t : trajectories) {
        const Vec ref = (policy == RefPolicy::initial_state)
                            ? t.states.front()
                            : Vec(Vec::Zero(grid.state_dim()));
        for (std::size_t n = 0; n < t.states.size(); ++n, ++col) {
            m.data.col(col) = t.states[n] - ref;
            m.column_meta[col] = {t.config.mu, static_cast<std::uint64_t>(n)};
        }
    }
    if (policy == RefPolicy::initial_state)
        m.reference_state = trajectories.front().states.front();
    return m;
}

DatasetSplit split_dataset(Eigen::Index cols, std::uint64_t seed) {
    if (cols < 2) throw StructuralError("split_dataset: need at least 2 columns");
    std::vector<int> perm(static_cast<std::size_t>(cols));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto n_val = std::max<std::size_t>(1, static_cast<std::size_t>(cols) / 10);
    DatasetSplit split;
    split.validation_indices.assign(perm.begin(), perm.begin() + n_val);
    split.train_indices.assign(perm.begin() + n_val, perm.end());
    std::sort(split.validation_indices.begin(), split.validation_indices.end());
    std::sort(split.train_indices.begin(), split.train_indices.end());
    return split;
}

}  // namespace nmrom
