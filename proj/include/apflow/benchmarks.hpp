#pragma once

#include <string>
#include <utility>
#include <vector>

#include "apflow/scheme.hpp"

namespace apflow {

/// Smooth periodic density/velocity perturbation on [0,1].
State spp_init(const Grid& g, double eps);

/// Two acoustic pulses running toward each other on [-1,1].
State caw_init(const Grid& g, double eps);

/// Four-piece Riemann data on [0,1] (half-open break intervals).
State riemann_init(const Grid& g, double eps);

/// Gresho vortex on [0,1]^2: triangular angular-velocity profile of
/// radius R = 0.4 around (0.5, 0.5) over a background drift (0.1, 0),
/// density from the centrifugal pressure balance.
State gresho_init(const Grid& g, double eps);

/// Smooth compactly-supported travelling vortex on [0,1]^2 with
/// background state (rho, u) = (110, (0.6, 0)).
State vortex_init(const Grid& g, double eps);

/// Closed-form initial data plus the run parameters each test problem is
/// normally exercised with (CFL per Mach number, adaptive-lambda factor,
/// end time).
struct ProblemPreset {
    std::string name;
    int dim = 1;
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> length{1.0, 1.0};
    double kappa = 1.0;
    double gamma = 2.0;
    std::vector<double> eps_list;
    double default_eps = 0.1;
    int default_nx = 100;
    double default_t_end = 0.1;
    std::vector<std::pair<double, double>> cfl_table;  // (eps, cfl)
    double cfl_fallback = 0.1;
    std::vector<std::pair<double, double>> c_table;  // (eps, adaptive c)
    double c_fallback = 100.0;
    State (*init)(const Grid&, double) = nullptr;

    double cfl_for(double eps) const;
    double adaptive_c_for(double eps) const;
    Grid make_run_grid(int nx, int ny) const;
    FluidParams make_fluid(double eps, const State& initial) const;
};

/// Registry lookup by name ("spp", "caw", "riemann", "gresho", "vortex",
/// plus "gresho_contour" for the contour-plot lambda factor). Throws
/// UnknownProblem.
const ProblemPreset& preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace apflow
