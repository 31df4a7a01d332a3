// Uniform grid on the unit square with Dirichlet boundary eliminated.
#pragma once
#include <cstdint>

#include "nmrom/errors.hpp"

namespace nmrom {

// Node counts include the boundary: x_i = i*hx for i = 0..nx-1.
// Only interior nodes are stored in state vectors. The flat layout is
// component-major (u block then v block), then row-major over j, then i:
//
//   flat(c, i, j) = c*(nx-2)*(ny-2) + (j-1)*(nx-2) + (i-1),  1 <= i <= nx-2.
//
// The autoencoder mask and the hyper-reduction stencil closure both depend
// on this layout; do not change it without versioning the file formats.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double hx = 0.0;
    double hy = 0.0;

    GridSpec() = default;
    GridSpec(int nx_, int ny_) : nx(nx_), ny(ny_) {
        if (nx < 3 || ny < 3)
            throw ConfigError("GridSpec: nx and ny must be >= 3");
        hx = 1.0 / (nx - 1);
        hy = 1.0 / (ny - 1);
    }

    int interior_x() const { return nx - 2; }
    int interior_y() const { return ny - 2; }
    int nodes_per_component() const { return interior_x() * interior_y(); }
    // Full state dimension N (both velocity components).
    int state_dim() const { return 2 * nodes_per_component(); }

    // (component, interior i, interior j) -> flat index. i in [1, nx-2], j in [1, ny-2].
    int flat(int comp, int i, int j) const {
        return comp * nodes_per_component() + (j - 1) * interior_x() + (i - 1);
    }

    struct NodeIndex {
        int comp, i, j;
    };
    NodeIndex unflat(int idx) const {
        const int per = nodes_per_component();
        const int comp = idx / per;
        const int rem = idx % per;
        return {comp, rem % interior_x() + 1, rem / interior_x() + 1};
    }

    double x(int i) const { return i * hx; }
    double y(int j) const { return j * hy; }

    bool operator==(const GridSpec& o) const { return nx == o.nx && ny == o.ny; }
};

}  // namespace nmrom
