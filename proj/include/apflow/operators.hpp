#pragma once

#include "apflow/field.hpp"

namespace apflow {

/// Central-difference discrete operators on the periodic uniform grid.
/// All operators carry the finite-volume measure factor |sigma|/|K| = 1/h,
/// so they are consistent difference quotients:
///   (div_h v)_K   = sum_a (v_a[K+e_a] - v_a[K-e_a]) / (2h)
///   (grad_h f)_a  = (f[K+e_a] - f[K-e_a]) / (2h)
///   (lap_c f)_K   = sum_a (f[K+e_a] - 2 f[K] + f[K-e_a]) / h^2
///   lap_w         = div_h o grad_h   (stencil reach +-2)
/// Under this scaling the implicit diffusion of the time stepper is
/// lambda * h * lap_c.

/// Jump f_out - f_in across the face, oriented by the outward normal of
/// FaceRef::cell; the stored orientation is (+axis neighbor) - (cell),
/// and sign = -1 flips it.
double face_jump(const ScalarField& f, const FaceRef& face);

/// Arithmetic mean of the two cell values at the face.
double face_avg(const ScalarField& f, const FaceRef& face);

ScalarField div_h(const VectorField& v);
VectorField grad_h(const ScalarField& f);
ScalarField lap_compact(const ScalarField& f);
ScalarField lap_wide(const ScalarField& f);

enum class OpTag {
    DiffAxis0,   // gradient/divergence component along axis 0
    DiffAxis1,   // along axis 1 (2D only)
    LapCompact,
    LapWide,
};

/// Row-major square matrix, used as the dense oracle for the stencil
/// operators on small grids.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;

    explicit DenseMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// Explicit matrix of the requested operator, built by applying it to
/// indicator fields (column j = op applied to e_j). Grids above 4096
/// cells are rejected with TooLarge.
DenseMatrix dense_matrix(OpTag tag, const Grid& g);

}  // namespace apflow
