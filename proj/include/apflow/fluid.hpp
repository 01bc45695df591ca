#pragma once

#include <cmath>

#include "apflow/errors.hpp"

namespace apflow {

/// Isentropic pressure law p = kappa * rho^gamma, its potential
/// P = kappa * rho^gamma / (gamma - 1), the Mach number eps, and the
/// linearization density rho0 about which the stiff pressure gradient
/// is linearized.
struct FluidParams {
    double kappa = 1.0;
    double gamma = 2.0;
    double eps = 1.0;
    double rho0 = 1.0;

    double pressure(double rho) const {
        check(rho);
        return kappa * std::pow(rho, gamma);
    }
    double pressure_potential(double rho) const {
        check(rho);
        return kappa * std::pow(rho, gamma) / (gamma - 1.0);
    }
    /// p'(rho) = kappa * gamma * rho^(gamma-1)
    double dpressure(double rho) const {
        check(rho);
        return kappa * gamma * std::pow(rho, gamma - 1.0);
    }
    /// P'(rho) = kappa * gamma * rho^(gamma-1) / (gamma-1)
    double potential_d1(double rho) const {
        check(rho);
        return kappa * gamma * std::pow(rho, gamma - 1.0) / (gamma - 1.0);
    }
    /// P''(rho) = kappa * gamma * rho^(gamma-2)
    double potential_d2(double rho) const {
        check(rho);
        return kappa * gamma * std::pow(rho, gamma - 2.0);
    }
    /// Stiffness coefficient of the linearized pressure gradient.
    double dp0() const { return dpressure(rho0); }

    /// Mean-value second derivative 2 (P(to) - P(from) - P'(from)(to - from))
    /// / (to - from)^2, i.e. the P''(rho*) defined by the Taylor remainder
    /// of P between the two cell values. The direct quotient cancels
    /// catastrophically for nearby arguments, so small jumps switch to the
    /// series form P''(from + (to - from)/3) + O((to-from)^2).
    double potential_d2_between(double from, double to) const {
        const double d = to - from;
        if (std::abs(d) <= 1e-5 * std::max(from, to))
            return potential_d2(from + d / 3.0);
        return 2.0 * (pressure_potential(to) - pressure_potential(from) -
                      potential_d1(from) * d) /
               (d * d);
    }

private:
    static void check(double rho) {
        if (!(rho > 0.0)) throw NonPositiveDensity("pressure law evaluated at rho <= 0");
    }
};

}  // namespace apflow
