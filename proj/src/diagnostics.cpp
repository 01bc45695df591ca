#include "apflow/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "apflow/operators.hpp"

namespace apflow {

EnergyRecord energies(const State& s, const FluidParams& fluid) {
    const Grid& g = s.rho.grid;
    EnergyRecord rec;
    rec.t = s.t;
    rec.min_rho = s.rho.min();
    if (!(rec.min_rho > 0.0))
        throw NonPositiveDensity("energies: min rho = " + std::to_string(rec.min_rho));

    const double cellw = g.cell_measure();
    const double inv_eps2 = 1.0 / (fluid.eps * fluid.eps);
    for (int k = 0; k < g.cells(); ++k) {
        double m2 = 0.0;
        for (int a = 0; a < g.dim; ++a) m2 += s.mom[a][k] * s.mom[a][k];
        rec.ke += cellw * 0.5 * m2 / s.rho[k];
        rec.pe += cellw * fluid.pressure_potential(s.rho[k]) * inv_eps2;
    }
    rec.total = rec.ke + rec.pe;

    const ScalarField divu = div_h(s.velocity());
    for (int k = 0; k < g.cells(); ++k) rec.div_u_l1 += cellw * std::abs(divu[k]);
    return rec;
}

double renorm_residual(const State& before, const State& after, double lambda, double dt,
                       const std::function<double(double)>& B,
                       const std::function<double(double)>& dB, double* scale_out) {
    const Grid& g = before.rho.grid;
    const double cellw = g.cell_measure();
    const double facew = g.face_measure();
    const ScalarField& r0 = before.rho;
    const ScalarField& r1 = after.rho;
    const VectorField u1 = after.velocity();
    const ScalarField divu1 = div_h(u1);

    // The natural scale of each term group is the sum of the magnitudes of
    // its contributions; roundoff of the cancellation is measured against
    // the largest of those.
    double t_time = 0.0, t_div = 0.0, t_convex = 0.0;
    double m_time = 0.0, m_div = 0.0, m_convex = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
        const double b0 = B(r0[k]);
        const double b1 = B(r1[k]);
        const double db1 = dB(r1[k]);
        t_time += cellw * (b1 - b0) / dt;
        m_time += cellw * (std::abs(b1) + std::abs(b0)) / dt;
        t_div += cellw * (r1[k] * db1 - b1) * divu1[k];
        m_div += cellw * std::abs((r1[k] * db1 - b1) * divu1[k]);
        t_convex -= cellw * (b0 - b1 - db1 * (r0[k] - r1[k])) / dt;
        m_convex += cellw * (std::abs(b0 - b1) + std::abs(db1 * (r0[k] - r1[k]))) / dt;
    }

    double t_diff = 0.0, m_diff = 0.0;
    for_each_face(g, [&](const FaceRef& f) {
        const int out = g.neighbor(f.cell, f.axis, +1);
        const double term = lambda * facew * (dB(r1[out]) - dB(r1[f.cell])) * (r1[out] - r1[f.cell]);
        t_diff -= term;
        m_diff += std::abs(term);
    });

    // Face pairing with the neighbor-cell velocity weighting: each cell K
    // contributes 1/2 (jump B - B'(rho_K) jump rho) u_L . n over both of
    // its faces per axis.
    double t_face = 0.0, m_face = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
        const double bk = B(r1[k]);
        const double dbk = dB(r1[k]);
        for (int a = 0; a < g.dim; ++a) {
            const int up = g.neighbor(k, a, +1);
            const int dn = g.neighbor(k, a, -1);
            const double tu = facew * 0.5 * ((B(r1[up]) - bk) - dbk * (r1[up] - r1[k])) * u1[a][up];
            const double td = facew * 0.5 * ((B(r1[dn]) - bk) - dbk * (r1[dn] - r1[k])) * u1[a][dn];
            t_face += tu - td;
            m_face += std::abs(tu) + std::abs(td);
        }
    }

    const double lhs = t_time + t_div;
    const double rhs = t_diff + t_convex + t_face;
    const double scale = std::max({m_time, m_div, m_diff, m_convex, m_face});
    if (scale_out) *scale_out = scale;
    return std::abs(lhs - rhs);
}

namespace {

struct KeTerms {
    double dtke = 0.0;
    double press_lin = 0.0;
    double press_nonlin = 0.0;
    double relax = 0.0;
    double diff = 0.0;
    double conv_ke = 0.0;
    double conv_mom = 0.0;
    double magnitude = 0.0;  // largest term-group magnitude (sum of |contributions|)
};

KeTerms ke_terms(const State& before, const State& after, double lambda, double dt,
                 const FluidParams& fluid) {
    const Grid& g = before.rho.grid;
    const double cellw = g.cell_measure();
    const double facew = g.face_measure();
    const VectorField u0 = before.velocity();
    const VectorField u1 = after.velocity();
    const ScalarField divu1 = div_h(u1);
    const double inv_eps2 = 1.0 / (fluid.eps * fluid.eps);
    const double dp0 = fluid.dp0();

    KeTerms t;
    double m_dtke = 0.0, m_press = 0.0, m_relax = 0.0, m_diff = 0.0, m_conv_ke = 0.0,
           m_conv_mom = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
        double ke1 = 0.0, ke0 = 0.0, du2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            ke1 += u1[a][k] * u1[a][k];
            ke0 += u0[a][k] * u0[a][k];
            const double d = u1[a][k] - u0[a][k];
            du2 += d * d;
        }
        t.dtke += cellw * (after.rho[k] * ke1 - before.rho[k] * ke0) / (2.0 * dt);
        m_dtke += cellw * (after.rho[k] * ke1 + before.rho[k] * ke0) / (2.0 * dt);
        t.press_lin -= dp0 * inv_eps2 * cellw * after.rho[k] * divu1[k];
        m_press += dp0 * inv_eps2 * cellw * std::abs(after.rho[k] * divu1[k]);
        t.press_nonlin -= inv_eps2 * cellw * fluid.pressure(after.rho[k]) * divu1[k];
        t.relax -= cellw * before.rho[k] * du2 / (2.0 * dt);
        m_relax += cellw * before.rho[k] * du2 / (2.0 * dt);
    }

    for_each_face(g, [&](const FaceRef& f) {
        const int in = f.cell;
        const int out = g.neighbor(in, f.axis, +1);
        const int a = f.axis;

        double du2 = 0.0, ke_out = 0.0, ke_in = 0.0, conv_dot = 0.0, conv_mag = 0.0;
        for (int i = 0; i < g.dim; ++i) {
            const double d = u1[i][out] - u1[i][in];
            du2 += d * d;
            ke_out += u1[i][out] * u1[i][out];
            ke_in += u1[i][in] * u1[i][in];
            const double avg_flux0 = 0.5 * (before.rho[out] * u0[i][out] * u0[a][out] +
                                            before.rho[in] * u0[i][in] * u0[a][in]);
            conv_dot += d * avg_flux0;
            conv_mag += std::abs(d * avg_flux0);
        }
        const double avg_rho1 = 0.5 * (after.rho[out] + after.rho[in]);
        const double avg_m1a = 0.5 * (after.mom[a][out] + after.mom[a][in]);

        t.diff -= lambda * facew * avg_rho1 * du2;
        m_diff += lambda * facew * avg_rho1 * du2;
        t.conv_ke -= facew * avg_m1a * 0.5 * (ke_out - ke_in);
        m_conv_ke += facew * std::abs(avg_m1a) * 0.5 * (ke_out + ke_in);
        t.conv_mom += facew * conv_dot;
        m_conv_mom += facew * conv_mag;
    });
    t.magnitude = std::max({m_dtke, m_press, m_relax, m_diff, m_conv_ke, m_conv_mom});
    return t;
}

double ke_residual_from(const KeTerms& t, bool linearized, double* scale_out) {
    const double press = linearized ? t.press_lin : t.press_nonlin;
    const double lhs = t.dtke + press;
    const double rhs = t.relax + t.diff + t.conv_ke + t.conv_mom;
    if (scale_out) *scale_out = t.magnitude;
    return std::abs(lhs - rhs);
}

}  // namespace

double ke_balance_residual(const State& before, const State& after, double lambda, double dt,
                           const FluidParams& fluid, double* scale_out) {
    return ke_residual_from(ke_terms(before, after, lambda, dt, fluid), true, scale_out);
}

double ke_balance_residual_nonlinear_pressure(const State& before, const State& after,
                                              double lambda, double dt, const FluidParams& fluid,
                                              double* scale_out) {
    return ke_residual_from(ke_terms(before, after, lambda, dt, fluid), false, scale_out);
}

LambdaConditionReport check_lambda_conditions(const State& before, const State& after,
                                              double lambda, double dt, const FluidParams& fluid,
                                              double jump_floor) {
    (void)dt;  // the implicit-level conditions involve no time step
    const Grid& g = before.rho.grid;
    const VectorField u0 = before.velocity();
    const VectorField u1 = after.velocity();
    const ScalarField& r1 = after.rho;

    LambdaConditionReport rep;
    rep.lambda = lambda;
    for_each_face(g, [&](const FaceRef& f) {
        const int in = f.cell;
        const int out = g.neighbor(in, f.axis, +1);
        const int a = f.axis;
        ++rep.faces;

        double req = 0.0;

        const double drho = r1[out] - r1[in];
        if (std::abs(drho) > jump_floor) {
            const double dP1 = fluid.potential_d1(r1[out]) - fluid.potential_d1(r1[in]);
            if (std::abs(dP1) > jump_floor) {
                const double p2_out = fluid.potential_d2_between(r1[in], r1[out]);
                const double p2_in = fluid.potential_d2_between(r1[out], r1[in]);
                const double ie = drho * (p2_out * u1[a][out] - p2_in * u1[a][in]) / (4.0 * dP1);
                rep.worst_ie_required = std::max(rep.worst_ie_required, ie);
                req = std::max(req, ie);
            }
        }

        double du2 = 0.0, ke_out = 0.0, ke_in = 0.0, conv_dot = 0.0;
        for (int i = 0; i < g.dim; ++i) {
            const double d = u1[i][out] - u1[i][in];
            du2 += d * d;
            ke_out += u1[i][out] * u1[i][out];
            ke_in += u1[i][in] * u1[i][in];
            const double avg_flux0 = 0.5 * (before.rho[out] * u0[i][out] * u0[a][out] +
                                            before.rho[in] * u0[i][in] * u0[a][in]);
            conv_dot += d * avg_flux0;
        }
        if (std::sqrt(du2) > jump_floor) {
            const double avg_m1a = 0.5 * (after.mom[a][out] + after.mom[a][in]);
            const double avg_rho1 = 0.5 * (r1[out] + r1[in]);
            const double ke = (-avg_m1a * 0.5 * (ke_out - ke_in) + conv_dot) / (avg_rho1 * du2);
            rep.worst_ke_required = std::max(rep.worst_ke_required, ke);
            req = std::max(req, ke);
        }

        const double pos = 0.5 * std::max(std::abs(u1[a][out]), std::abs(u1[a][in]));
        rep.worst_positivity_required = std::max(rep.worst_positivity_required, pos);
        req = std::max(req, pos);

        rep.worst_required = std::max(rep.worst_required, req);
        if (lambda < req) ++rep.violations;
    });
    rep.worst_margin = lambda - rep.worst_required;
    return rep;
}

ApIndicators ap_indicators(const State& s, const FluidParams& fluid) {
    const Grid& g = s.rho.grid;
    if (!(s.rho.min() > 0.0)) throw NonPositiveDensity("ap_indicators: rho <= 0");
    ApIndicators out;
    for (int k = 0; k < g.cells(); ++k)
        out.max_density_deviation =
            std::max(out.max_density_deviation, std::abs(s.rho[k] - fluid.rho0));
    const ScalarField divu = div_h(s.velocity());
    const double cellw = g.cell_measure();
    for (int k = 0; k < g.cells(); ++k) out.div_u_l1 += cellw * std::abs(divu[k]);
    out.div_u_l1_over_eps2 = out.div_u_l1 / (fluid.eps * fluid.eps);
    return out;
}

ScalarField restrict_to(const ScalarField& fine, const Grid& coarse) {
    const Grid& gf = fine.grid;
    if (gf.dim != coarse.dim) throw NonNestedGrids("restrict_to: dimension mismatch");
    std::array<int, 2> f{1, 1};
    for (int a = 0; a < gf.dim; ++a) {
        if (gf.n[a] % coarse.n[a] != 0)
            throw NonNestedGrids("restrict_to: " + std::to_string(gf.n[a]) +
                                 " fine cells not a multiple of " + std::to_string(coarse.n[a]));
        if (std::abs(gf.origin[a] - coarse.origin[a]) > 1e-12 ||
            std::abs(gf.length[a] - coarse.length[a]) > 1e-12)
            throw NonNestedGrids("restrict_to: domain mismatch");
        f[a] = gf.n[a] / coarse.n[a];
    }
    ScalarField out(coarse);
    const double w = 1.0 / (static_cast<double>(f[0]) * f[1]);
    for (int j = 0; j < coarse.n[1]; ++j) {
        for (int i = 0; i < coarse.n[0]; ++i) {
            double s = 0.0;
            for (int q = 0; q < f[1]; ++q)
                for (int p = 0; p < f[0]; ++p) s += fine[gf.index(i * f[0] + p, j * f[1] + q)];
            out[coarse.index(i, j)] = s * w;
        }
    }
    return out;
}

double l2_error(const ScalarField& coarse, const ScalarField& fine_ref) {
    const ScalarField r = restrict_to(fine_ref, coarse.grid);
    const double cellw = coarse.grid.cell_measure();
    double s = 0.0;
    for (int k = 0; k < coarse.grid.cells(); ++k) {
        const double d = coarse[k] - r[k];
        s += cellw * d * d;
    }
    return std::sqrt(s);
}

double l2_error(const VectorField& coarse, const VectorField& fine_ref) {
    double s = 0.0;
    for (int a = 0; a < coarse.dim(); ++a) {
        const ScalarField r = restrict_to(fine_ref[a], coarse.grid);
        const double cellw = coarse.grid.cell_measure();
        for (int k = 0; k < coarse.grid.cells(); ++k) {
            const double d = coarse[a][k] - r[k];
            s += cellw * d * d;
        }
    }
    return std::sqrt(s);
}

std::vector<EocRow> eoc_table(const std::vector<std::pair<int, double>>& n_err,
                              double domain_length) {
    std::vector<EocRow> rows;
    rows.reserve(n_err.size());
    for (size_t i = 0; i < n_err.size(); ++i) {
        EocRow row;
        row.n_cells = n_err[i].first;
        row.h = domain_length / n_err[i].first;
        row.err_l2 = n_err[i].second;
        if (i == 0) {
            row.eoc = std::numeric_limits<double>::quiet_NaN();
        } else {
            row.eoc = std::log(rows[i - 1].err_l2 / row.err_l2) / std::log(rows[i - 1].h / row.h);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace apflow
