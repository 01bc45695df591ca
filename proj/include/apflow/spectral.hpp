#pragma once

#include <array>
#include <vector>

#include "apflow/field.hpp"
#include "apflow/fluid.hpp"

namespace apflow {

/// Fourier symbols of the two implicit operators of a time step. The
/// periodic uniform-grid stencils are circulant (1D) or block circulant
/// with circulant blocks (2D), so both operators diagonalize in the DFT
/// basis and the solves are exact per mode.
///
/// For 1D mode j with theta = 2*pi*j/N:
///   mu    = (2 cos theta - 2) / h^2        (compact Laplacian, <= 0)
///   eta   = i sin(theta) / h               (difference component)
///   omega = -sin(theta)^2 / h^2            (wide Laplacian = sum eta_a^2)
///   v     = 1 - dt*lambda*h*mu             (Helmholtz symbol, >= 1)
///   s     = v + (dt/eps)^2 * p'(rho0) * (-omega) / v   (mass operator, >= 1)
/// 2D symbols sum mu/omega over the axes. The per-axis tables are built
/// with enforced symmetry (value at j mirrors N-j), and eta is exactly
/// zero at j = 0 and j = N/2, matching the exact nullspace of the stencils.
struct Symbols {
    Grid grid;
    double dt = 0.0;
    double lambda = 0.0;
    double h = 0.0;
    double eps = 1.0;
    double dp0 = 0.0;  // p'(rho0)

    std::vector<double> mu;     // per mode, field layout (axis 0 fastest)
    std::vector<double> omega;  // per mode
    std::vector<double> v;      // per mode
    std::vector<double> s;      // per mode
    std::array<std::vector<double>, 2> eta;  // imaginary part, per axis index

    // 1D only: inverse-operator kernels in reversed layout, ready for
    // direct circular convolution. Applying the solve as a convolution
    // with relative-offset summation makes a time step bitwise
    // equivariant under index translation, which the FFT path is not.
    std::vector<double> helm_kernel;
    std::vector<double> mass_kernel;
};

Symbols build_symbols(const Grid& g, double dt, double lambda, const FluidParams& fluid);

/// Solve (I - dt*lambda*h*lap_c) x = b. The zero mode has symbol 1, so
/// constants are fixed points. Output is real; the imaginary residue of
/// the inverse transform is checked against 1e-13 * ||b||_inf and then
/// discarded (exceeding it is an internal error).
ScalarField solve_helmholtz(const ScalarField& b, const Symbols& sym);
VectorField solve_helmholtz(const VectorField& b, const Symbols& sym);

/// Solve the composite mass operator
///   (I - dt*lambda*h*lap_c - (dt/eps)^2 p'(rho0) (I - dt*lambda*h*lap_c)^{-1} lap_w) x = b.
/// Preserves the mean of b (zero-mode symbol 1).
ScalarField solve_mass_operator(const ScalarField& b, const Symbols& sym);

/// Low-Mach projection indicator: || solve_mass_operator(b) - mean(b) ||_inf.
/// Scales as O(eps^2); only meaningful for eps <= 1e-4 (EpsilonTooLarge
/// otherwise).
double projector_limit_check(const Grid& g, double dt, double lambda, const FluidParams& fluid,
                             const ScalarField& b);

namespace detail {
/// Test hook: when set, build_symbols perturbs one nonzero mode so that
/// solves disagree with the dense oracle. Used by the validate command's
/// fault-injection path only.
extern bool corrupt_symbols_for_testing;
}  // namespace detail

}  // namespace apflow
