#include "nmrom/pod.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace nmrom {

ReducedBasis compute_basis(const SnapshotMatrix& m, int k) {
    const Eigen::Index max_k = std::min(m.rows(), m.cols());
    if (k < 1 || k > max_k)
        throw StructuralError("compute_basis: k must be in [1, min(N, M)]");
    Eigen::BDCSVD<Mat> svd(m.data, Eigen::ComputeThinU);
    ReducedBasis basis;
    basis.phi = svd.matrixU().leftCols(k);
    basis.singular_values = svd.singularValues().head(k);
    for (Eigen::Index c = 0; c < basis.phi.cols(); ++c) {
        Eigen::Index imax;
        basis.phi.col(c).cwiseAbs().maxCoeff(&imax);
        if (basis.phi(imax, c) < 0.0) basis.phi.col(c) = -basis.phi.col(c);
    }
    return basis;
}

double ls_projection_error(const ReducedBasis& basis, const Trajectory& traj,
                           const Vec& u_ref) {
    if (u_ref.size() != basis.phi.rows())
        throw StructuralError("ls_projection_error: dimension mismatch");
    double worst = 0.0;
    for (const auto& u : traj.states) {
        if (u.size() != basis.phi.rows())
            throw StructuralError("ls_projection_error: dimension mismatch");
        const Vec dev = u - u_ref;
        const Vec residual = dev - basis.phi * (basis.phi.transpose() * dev);
        const double denom = u.norm();
        if (denom > 0.0) worst = std::max(worst, residual.norm() / denom);
    }
    return worst;
}

void write_basis(const ReducedBasis& basis, const std::string& path) {
    SnapshotMatrix m;
    m.data = basis.phi;
    m.column_meta.resize(basis.phi.cols());
    // mu slot carries the singular value, time_index the column rank
    for (Eigen::Index c = 0; c < basis.phi.cols(); ++c)
        m.column_meta[c] = {basis.singular_values[c], static_cast<std::uint64_t>(c)};
    write_snapshots(m, path);
}

ReducedBasis read_basis(const std::string& path) {
    SnapshotMatrix m = read_snapshots(path);
    ReducedBasis basis;
    basis.phi = m.data;
    basis.singular_values.resize(m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        basis.singular_values[c] = m.column_meta[c].mu;
    return basis;
}

}  // namespace nmrom
