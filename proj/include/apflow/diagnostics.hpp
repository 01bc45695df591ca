#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "apflow/fluid.hpp"
#include "apflow/scheme.hpp"

namespace apflow {

/// Per-step energy and monitoring data. total = ke + pe by construction.
struct EnergyRecord {
    double t = 0.0;
    double ke = 0.0;        // sum |K| * 1/2 rho |u|^2
    double pe = 0.0;        // sum |K| * P(rho) / eps^2
    double total = 0.0;
    double dt = 0.0;        // filled by the caller (0 for the initial record)
    double lambda = 0.0;    // likewise
    double min_rho = 0.0;
    double div_u_l1 = 0.0;  // sum |K| * |div_h u|
};

EnergyRecord energies(const State& s, const FluidParams& fluid);

/// Residual of the discrete renormalization identity for a step pair and
/// a C^1 function B (given with its derivative). The identity is exact
/// algebra of the mass update, so the residual is solver roundoff:
/// <= 1e-9 * scale, where scale (optionally reported) is the largest
/// term magnitude. Cell sums carry |K|, face sums |sigma|.
double renorm_residual(const State& before, const State& after, double lambda, double dt,
                       const std::function<double(double)>& B,
                       const std::function<double(double)>& dB, double* scale_out = nullptr);

/// Residual of the discrete kinetic-energy balance for a step pair, with
/// the pressure work in linearized form (p'(rho0)/eps^2) sum |K| rho^{n+1}
/// (div_h u^{n+1}); exact for the evolved scheme, <= 1e-9 * scale.
double ke_balance_residual(const State& before, const State& after, double lambda, double dt,
                           const FluidParams& fluid, double* scale_out = nullptr);

/// Same balance with the nonlinear pressure work (1/eps^2) sum |K|
/// p(rho^{n+1}) (div_h u^{n+1}). Not exact for the linearized scheme:
/// differs from zero by O(eps^2) * scale.
double ke_balance_residual_nonlinear_pressure(const State& before, const State& after,
                                              double lambda, double dt, const FluidParams& fluid,
                                              double* scale_out = nullptr);

/// A-posteriori check of the diffusion-coefficient conditions at the
/// implicit level. Advisory: negative margins flag that the energy
/// theorems' hypotheses did not hold for this step, not that the step is
/// invalid.
struct LambdaConditionReport {
    double lambda = 0.0;
    double worst_required = 0.0;       // max over faces of the combined requirement
    double worst_margin = 0.0;         // lambda - worst_required
    double worst_ie_required = 0.0;    // internal-energy face bound
    double worst_ke_required = 0.0;    // kinetic-energy face bound
    double worst_positivity_required = 0.0;  // |u . n| / 2 terms
    long faces = 0;
    long violations = 0;  // faces with lambda < requirement
};

LambdaConditionReport check_lambda_conditions(const State& before, const State& after,
                                              double lambda, double dt, const FluidParams& fluid,
                                              double jump_floor = 1e-12);

/// Low-Mach consistency indicators of a state.
struct ApIndicators {
    double max_density_deviation = 0.0;  // max |rho - rho0|
    double div_u_l1 = 0.0;               // sum |K| |div_h u|
    double div_u_l1_over_eps2 = 0.0;
};

ApIndicators ap_indicators(const State& s, const FluidParams& fluid);

/// Block-average a fine field onto a coarser nested grid (the fine cell
/// count must be an integer multiple of the coarse one per axis).
ScalarField restrict_to(const ScalarField& fine, const Grid& coarse);

/// L2 error sqrt(sum |K| (coarse - restricted fine)^2); vector fields sum
/// the squares over components.
double l2_error(const ScalarField& coarse, const ScalarField& fine_ref);
double l2_error(const VectorField& coarse, const VectorField& fine_ref);

/// Convergence-table row; eoc is NaN on the first row.
struct EocRow {
    int n_cells = 0;
    double h = 0.0;
    double err_l2 = 0.0;
    double eoc = 0.0;
};

/// eoc_k = log(err_{k-1}/err_k) / log(h_{k-1}/h_k) with h = L / n.
std::vector<EocRow> eoc_table(const std::vector<std::pair<int, double>>& n_err,
                              double domain_length);

}  // namespace apflow
