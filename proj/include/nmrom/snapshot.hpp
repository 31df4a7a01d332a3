// Snapshot matrices: binary persistence, training-set assembly, dataset split.
#pragma once
#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmrom/fom.hpp"

namespace nmrom {

struct ColumnMeta {
    double mu = 0.0;
    std::uint64_t time_index = 0;
};

struct SnapshotMatrix {
    Mat data;                       // N x M, one snapshot per column
    std::vector<ColumnMeta> column_meta;
    std::optional<Vec> reference_state;  // if set, columns are u - u_ref

    Eigen::Index rows() const { return data.rows(); }
    Eigen::Index cols() const { return data.cols(); }
};

struct DatasetSplit {
    std::vector<int> train_indices;
    std::vector<int> validation_indices;
};

// Binary "ROMSNAP1" format:
//   magic[8], u64 rows, u64 cols, u64 flags (bit 0: reference state present),
//   rows*cols f64 column-major, per-column {f64 mu, u64 time_index},
//   then rows f64 reference state if flagged. All little-endian.
void write_snapshots(const SnapshotMatrix& m, const std::string& path);
SnapshotMatrix read_snapshots(const std::string& path);

// CSV export, one snapshot per column, "%.17g" values.
void write_snapshots_csv(const SnapshotMatrix& m, const std::string& path);

enum class RefPolicy {
    none,           // raw states
    initial_state,  // u_ref(mu) = u^0(mu), subtracted per trajectory
};

// Stacks all states of all trajectories column-wise. With RefPolicy::
// initial_state each trajectory's own u^0 is subtracted from its columns and
// the first trajectory's u^0 is recorded as the reference state.
SnapshotMatrix assemble_training_set(const std::vector<Trajectory>& trajectories,
                                     RefPolicy policy);

// Seeded uniform 90/10 split; validation count = max(1, floor(M/10)).
DatasetSplit split_dataset(Eigen::Index cols, std::uint64_t seed);

}  // namespace nmrom
