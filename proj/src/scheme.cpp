#include "apflow/scheme.hpp"

#include <cmath>
#include <string>

#include "apflow/operators.hpp"

namespace apflow {

double compute_dt(const State& s, const SchemeParams& p, const Grid& g) {
    const double umax = s.velocity().max_norm();
    double dt = (umax > 0.0) ? p.cfl * g.h / umax : p.cfl * g.h;
    if (s.t + dt > p.t_end) dt = p.t_end - s.t;
    return dt;
}

namespace {

/// Largest per-face requirement from the internal-energy (T1) and
/// kinetic-energy (T2) face bounds, evaluated at the current time level.
/// Faces whose jumps fall below the floor contribute nothing; a negative
/// maximum is clipped to zero.
double max_face_requirement(const State& s, const VectorField& u, const FluidParams& fluid,
                            double floor) {
    const Grid& g = s.rho.grid;
    double best = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
        for (int a = 0; a < g.dim; ++a) {
            const int out = g.neighbor(k, a, +1);
            const double rho_in = s.rho[k];
            const double rho_out = s.rho[out];

            const double drho = rho_out - rho_in;
            if (std::abs(drho) > floor) {
                const double dP1 = fluid.potential_d1(rho_out) - fluid.potential_d1(rho_in);
                if (std::abs(dP1) > floor) {
                    // Mean-value second derivatives: P''(rho*_out) pairs with
                    // the out-cell velocity, P''(rho*_in) with the in-cell one.
                    const double p2_out = fluid.potential_d2_between(rho_in, rho_out);
                    const double p2_in = fluid.potential_d2_between(rho_out, rho_in);
                    const double num = p2_out * u[a][out] - p2_in * u[a][k];
                    const double t1 = drho * num / (4.0 * dP1);
                    best = std::max(best, t1);
                }
            }

            double du2 = 0.0;
            for (int i = 0; i < g.dim; ++i) {
                const double d = u[i][out] - u[i][k];
                du2 += d * d;
            }
            if (std::sqrt(du2) > floor) {
                // With every factor at the same time level the face bound
                // collapses through the discrete product rule,
                //   -avg(m_a) jump(|u|^2/2) + jump(u).avg(rho u u_a)
                //     = 1/4 jump(m_a) |jump u|^2,
                // which avoids the catastrophic cancellation of the raw
                // quotient at small velocity jumps.
                const double avg_rho = 0.5 * (rho_out + rho_in);
                const double t2 = (s.mom[a][out] - s.mom[a][k]) / (4.0 * avg_rho);
                best = std::max(best, t2);
            }
        }
    }
    return std::max(best, 0.0);
}

double bounds_lambda(const State& s, const VectorField& u, const SchemeParams& p,
                     const FluidParams& fluid) {
    const Grid& g = s.rho.grid;
    const double rho_min = s.rho.min();
    const double rho_max = s.rho.max();
    const double u_max = u.max_norm();
    // P'' is monotone in rho (power law), so the extrema over the density
    // range sit at the interval ends.
    const double pa = fluid.potential_d2(rho_min);
    const double pb = fluid.potential_d2(rho_max);
    const double p2_min = std::min(pa, pb);
    const double p2_max = std::max(pa, pb);

    double s_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.cells(); ++k) {
        for (int a = 0; a < g.dim; ++a) {
            const int out = g.neighbor(k, a, +1);
            double du2 = 0.0;
            for (int i = 0; i < g.dim; ++i) {
                const double d = u[i][out] - u[i][k];
                du2 += d * d;
            }
            const double du = std::sqrt(du2);
            if (du > p.jump_floor) s_min = std::min(s_min, du);
        }
    }
    if (!std::isfinite(s_min)) return p.lambda0;
    return std::max(p2_max * u_max / (2.0 * p2_min),
                    2.0 * rho_max * u_max * u_max / (rho_min * s_min));
}

}  // namespace

double compute_lambda(const State& s, const SchemeParams& p, const FluidParams& fluid) {
    switch (p.lambda_mode) {
        case LambdaMode::Constant:
            return p.lambda0;
        case LambdaMode::Adaptive:
            return p.adaptive_c * max_face_requirement(s, s.velocity(), fluid, p.jump_floor);
        case LambdaMode::Bounds:
            return bounds_lambda(s, s.velocity(), p, fluid);
    }
    throw InternalError("compute_lambda: unknown mode");
}

namespace {

/// div_h of the tensor row rho^n u_i^n u^n (central flux averages).
ScalarField convective_term(const State& s, const VectorField& u, int i) {
    const Grid& g = s.rho.grid;
    VectorField flux(g);
    for (int a = 0; a < g.dim; ++a)
        for (int k = 0; k < g.cells(); ++k) flux[a][k] = s.mom[i][k] * u[a][k];
    return div_h(flux);
}

}  // namespace

State step(const State& s, const SchemeParams& p, const FluidParams& fluid, const Grid& g,
           StepInfo* info) {
    const VectorField u = s.velocity();
    const double dt = compute_dt(s, p, g);
    const double lambda = compute_lambda(s, p, fluid);
    if (info) {
        info->dt = dt;
        info->lambda = lambda;
    }
    const Symbols sym = build_symbols(g, dt, lambda, fluid);

    VectorField pre(g);  // m^n - dt * conv
    for (int i = 0; i < g.dim; ++i) {
        const ScalarField conv = convective_term(s, u, i);
        for (int k = 0; k < g.cells(); ++k) pre[i][k] = s.mom[i][k] - dt * conv[k];
    }

    const VectorField gfield = solve_helmholtz(pre, sym);
    const ScalarField div_g = div_h(gfield);

    ScalarField rhs_rho(g);
    for (int k = 0; k < g.cells(); ++k) rhs_rho[k] = s.rho[k] - dt * div_g[k];
    ScalarField rho_new = solve_mass_operator(rhs_rho, sym);

    for (int k = 0; k < g.cells(); ++k) {
        if (!(rho_new[k] > 0.0))
            throw PositivityLost("density lost positivity at cell " + std::to_string(k) +
                                     " (value " + std::to_string(rho_new[k]) + ")",
                                 k, -1, rho_new[k]);
    }

    const VectorField grad_rho = grad_h(rho_new);
    const double coef = dt * fluid.dp0() / (fluid.eps * fluid.eps);
    VectorField rhs_mom(g);
    for (int i = 0; i < g.dim; ++i)
        for (int k = 0; k < g.cells(); ++k) rhs_mom[i][k] = pre[i][k] - coef * grad_rho[i][k];
    VectorField mom_new = solve_helmholtz(rhs_mom, sym);

    State next;
    double tn = s.t + dt;
    if (tn > p.t_end || p.t_end - tn < 1e-14 * std::max(1.0, p.t_end)) tn = p.t_end;
    next.t = tn;
    next.rho = std::move(rho_new);
    next.mom = std::move(mom_new);

    if (p.check_residuals) {
        const StepResiduals r = step_residuals(s, next, dt, lambda, fluid);
        if (r.mass_residual > 1e-9 * r.mass_scale || r.momentum_residual > 1e-9 * r.momentum_scale)
            throw InternalError("step: scheme residual above tolerance (mass " +
                                std::to_string(r.mass_residual) + ", momentum " +
                                std::to_string(r.momentum_residual) + ")");
    }
    return next;
}

StepResiduals step_residuals(const State& before, const State& after, double dt, double lambda,
                             const FluidParams& fluid) {
    const Grid& g = before.rho.grid;
    StepResiduals out;

    const ScalarField div_m = div_h(after.mom);
    const ScalarField lap_rho = lap_compact(after.rho);
    const double lh = lambda * g.h;
    for (int k = 0; k < g.cells(); ++k) {
        const double dtterm = (after.rho[k] - before.rho[k]) / dt;
        const double res = dtterm + div_m[k] - lh * lap_rho[k];
        out.mass_residual = std::max(out.mass_residual, std::abs(res));
        out.mass_scale = std::max(out.mass_scale,
                                  std::abs(dtterm) + std::abs(div_m[k]) + std::abs(lh * lap_rho[k]));
    }

    const VectorField u = before.velocity();
    const VectorField grad_rho = grad_h(after.rho);
    const double coef = fluid.dp0() / (fluid.eps * fluid.eps);
    for (int i = 0; i < g.dim; ++i) {
        const ScalarField conv = convective_term(before, u, i);
        const ScalarField lap_m = lap_compact(after.mom[i]);
        for (int k = 0; k < g.cells(); ++k) {
            const double dtterm = (after.mom[i][k] - before.mom[i][k]) / dt;
            const double res = dtterm + conv[k] - lh * lap_m[k] + coef * grad_rho[i][k];
            out.momentum_residual = std::max(out.momentum_residual, std::abs(res));
            out.momentum_scale =
                std::max(out.momentum_scale, std::abs(dtterm) + std::abs(conv[k]) +
                                                 std::abs(lh * lap_m[k]) +
                                                 std::abs(coef * grad_rho[i][k]));
        }
    }
    return out;
}

RunResult run(State initial, const SchemeParams& p, const FluidParams& fluid, const Grid& g,
              const StepObserver& observer) {
    State state = std::move(initial);
    long n = 0;
    while (state.t < p.t_end) {
        if (n >= p.max_steps)
            throw StepLimitExceeded("run: step limit " + std::to_string(p.max_steps) +
                                    " reached at t = " + std::to_string(state.t));
        StepInfo info;
        State next;
        try {
            next = step(state, p, fluid, g, &info);
        } catch (const PositivityLost& e) {
            throw PositivityLost(std::string(e.what()) + " at step " + std::to_string(n + 1),
                                 e.cell, n + 1, e.value);
        }
        ++n;
        if (observer) observer(StepRecord{n, info.dt, info.lambda, state, next});
        state = std::move(next);
    }
    return RunResult{std::move(state), n};
}

}  // namespace apflow
