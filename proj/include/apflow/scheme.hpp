#pragma once

#include <functional>

#include "apflow/field.hpp"
#include "apflow/fluid.hpp"
#include "apflow/spectral.hpp"

namespace apflow {

/// Flow state at one time level: density and momentum (rho * u), both
/// cell-centered. Density stays strictly positive at every accepted step.
struct State {
    double t = 0.0;
    ScalarField rho;
    VectorField mom;

    /// Pointwise velocity m / rho. Callers rely on the positivity
    /// invariant; evaluating on non-positive density is a logic error.
    VectorField velocity() const {
        VectorField u(rho.grid);
        for (int a = 0; a < mom.dim(); ++a)
            for (int k = 0; k < rho.grid.cells(); ++k) u[a][k] = mom[a][k] / rho[k];
        return u;
    }
};

enum class LambdaMode {
    Constant,  // lambda = lambda0 every step
    Adaptive,  // lambda = c * max over faces of the explicit-level face bound
    Bounds,    // a-priori bound from field extrema
};

struct SchemeParams {
    double cfl = 0.8;
    LambdaMode lambda_mode = LambdaMode::Constant;
    double lambda0 = 1.0;   // constant mode; also fallback for bounds mode
    double adaptive_c = 100.0;
    double t_end = 0.1;
    long max_steps = 1000000;
    double jump_floor = 1e-12;   // faces with smaller jumps contribute nothing
    bool check_residuals = false;  // assert the per-step scheme residuals
};

/// dt = cfl * h / max|u| (cfl * h when u vanishes), clamped so that
/// t + dt never exceeds t_end.
double compute_dt(const State& s, const SchemeParams& p, const Grid& g);

/// Numerical diffusion coefficient for the next step, per SchemeParams
/// mode. Adaptive mode evaluates, at the explicit time level, the
/// per-face requirements from the internal-energy and kinetic-energy
/// bounds and returns c times the largest (clipped at zero).
double compute_lambda(const State& s, const SchemeParams& p, const FluidParams& fluid);

struct StepInfo {
    double dt = 0.0;
    double lambda = 0.0;
};

/// One step of the two-stage linearized update:
///   1. conv_i = div_h(rho^n u_i^n u^n)
///   2. g      = helmholtz^{-1}(m^n - dt*conv)            (componentwise)
///   3. rho'   = massop^{-1}(rho^n - dt*div_h(g))
///   4. m'     = helmholtz^{-1}(m^n - dt*conv - (dt/eps^2) p'(rho0) grad_h(rho'))
/// Throws PositivityLost if rho' is not strictly positive.
State step(const State& s, const SchemeParams& p, const FluidParams& fluid, const Grid& g,
           StepInfo* info = nullptr);

/// Inf-norm residuals of the discrete mass and momentum equations for a
/// step pair, together with the natural magnitude of each equation's
/// terms. Both residuals vanish to solver tolerance (<= 1e-9 * scale).
struct StepResiduals {
    double mass_residual = 0.0;
    double mass_scale = 0.0;
    double momentum_residual = 0.0;
    double momentum_scale = 0.0;
};
StepResiduals step_residuals(const State& before, const State& after, double dt, double lambda,
                             const FluidParams& fluid);

struct StepRecord {
    long index;       // 1-based step counter
    double dt;
    double lambda;
    const State& before;
    const State& after;
};
using StepObserver = std::function<void(const StepRecord&)>;

struct RunResult {
    State final_state;
    long steps = 0;
};

/// Advance to t_end (hit exactly via dt clamping), invoking the observer
/// after every accepted step. Throws StepLimitExceeded past max_steps.
RunResult run(State initial, const SchemeParams& p, const FluidParams& fluid, const Grid& g,
              const StepObserver& observer = {});

}  // namespace apflow
