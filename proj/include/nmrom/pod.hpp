// POD bases from snapshot SVDs and linear-subspace projection diagnostics.
#pragma once
#include <string>

#include "nmrom/snapshot.hpp"

namespace nmrom {

struct ReducedBasis {
    Mat phi;              // N x k, orthonormal columns
    Vec singular_values;  // the k retained singular values
    std::string source = "solution-snapshots";
};

// First k left singular vectors of the snapshot matrix. Sign convention:
// the largest-magnitude entry of each column is made positive (first such
// entry on ties), so results are deterministic.
ReducedBasis compute_basis(const SnapshotMatrix& m, int k);

// max_n ||(I - phi*phi^T)(u^n - u_ref)||_2 / ||u^n||_2
double ls_projection_error(const ReducedBasis& basis, const Trajectory& traj,
                           const Vec& u_ref);

void write_basis(const ReducedBasis& basis, const std::string& path);
ReducedBasis read_basis(const std::string& path);

}  // namespace nmrom
