#pragma once

#include <array>
#include <span>

#include "apflow/errors.hpp"

namespace apflow {

/// Uniform periodic structured mesh in 1 or 2 dimensions with square
/// cells of width h. Cell measures are |K| = h^dim and |sigma| = h^(dim-1).
/// Linear cell indices are row-major with axis 0 fastest:
///   index = i0 + n[0]*i1.
/// Immutable after construction; cheap to copy.
struct Grid {
    int dim = 1;
    std::array<int, 2> n{1, 1};           // cells per axis; n[1] == 1 in 1D
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> length{1.0, 1.0};
    double h = 1.0;

    int cells() const { return n[0] * n[1]; }
    double cell_measure() const { return dim == 1 ? h : h * h; }
    double face_measure() const { return dim == 1 ? 1.0 : h; }

    int index(int i0, int i1 = 0) const { return i0 + n[0] * i1; }

    std::array<int, 2> multi_index(int k) const {
        return {k % n[0], k / n[0]};
    }

    /// Periodic neighbor of cell k shifted along `axis` by `shift` cells.
    /// |shift| must be <= the axis cell count (holds for all stencils here).
    int neighbor(int k, int axis, int shift) const {
        auto m = multi_index(k);
        int i = m[axis] + shift;
        const int na = n[axis];
        if (i < 0) i += na;
        if (i >= na) i -= na;
        m[axis] = i;
        return index(m[0], m[1]);
    }

    std::array<double, 2> cell_center(int k) const {
        const auto m = multi_index(k);
        std::array<double, 2> x{0.0, 0.0};
        for (int a = 0; a < dim; ++a) x[a] = origin[a] + (m[a] + 0.5) * h;
        return x;
    }

    bool same_as(const Grid& o) const {
        return dim == o.dim && n == o.n && origin == o.origin && length == o.length;
    }
};

/// Oriented face of cell `cell` along `axis`. sign=+1 refers to the face
/// shared with the +axis neighbor, sign=-1 to the -axis one. Iterating all
/// cells with sign=+1 visits every interior face exactly once.
struct FaceRef {
    int cell;
    int axis;
    int sign;  // +1 or -1
};

Grid make_grid(int dim, std::span<const int> n_cells, std::span<const double> origin,
               std::span<const double> length);

inline Grid make_grid_1d(int n, double origin = 0.0, double length = 1.0) {
    const int nc[1] = {n};
    const double o[1] = {origin};
    const double l[1] = {length};
    return make_grid(1, nc, o, l);
}

inline Grid make_grid_2d(int nx, int ny, double ox = 0.0, double oy = 0.0, double lx = 1.0,
                         double ly = 1.0) {
    const int nc[2] = {nx, ny};
    const double o[2] = {ox, oy};
    const double l[2] = {lx, ly};
    return make_grid(2, nc, o, l);
}

/// Visit every interior face once, with + orientation.
template <class Fn>
void for_each_face(const Grid& g, Fn&& fn) {
    const int nc = g.cells();
    for (int k = 0; k < nc; ++k)
        for (int a = 0; a < g.dim; ++a) fn(FaceRef{k, a, +1});
}

}  // namespace apflow
