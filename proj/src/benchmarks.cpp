#include "apflow/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace apflow {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(const Grid& g, int dim, const char* name) {
    if (g.dim != dim)
        throw WrongDimension(std::string(name) + ": needs a " + std::to_string(dim) + "D grid");
}

State from_primitive(const Grid& g, const std::function<double(std::array<double, 2>)>& rho,
                     const std::vector<std::function<double(std::array<double, 2>)>>& u) {
    State s;
    s.t = 0.0;
    s.rho = ScalarField(g);
    s.mom = VectorField(g);
    for (int k = 0; k < g.cells(); ++k) {
        const auto x = g.cell_center(k);
        const double r = rho(x);
        s.rho[k] = r;
        for (int a = 0; a < g.dim; ++a) s.mom[a][k] = r * u[a](x);
    }
    return s;
}

}  // namespace

State spp_init(const Grid& g, double eps) {
    require_dim(g, 1, "spp_init");
    return from_primitive(
        g, [eps](std::array<double, 2> x) { return 1.0 + eps * eps * std::sin(2.0 * kPi * x[0]); },
        {[eps](std::array<double, 2> x) { return 1.0 + eps * std::sin(2.0 * kPi * x[0]); }});
}

State caw_init(const Grid& g, double eps) {
    require_dim(g, 1, "caw_init");
    const double gamma = 1.4;
    return from_primitive(
        g,
        [eps](std::array<double, 2> x) {
            return 0.955 + 0.5 * eps * (1.0 - std::cos(2.0 * kPi * x[0]));
        },
        {[gamma](std::array<double, 2> x) {
            const double sgn = (x[0] > 0.0) ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0);
            return -sgn * std::sqrt(gamma) * (1.0 - std::cos(2.0 * kPi * x[0]));
        }});
}

State riemann_init(const Grid& g, double eps) {
    require_dim(g, 1, "riemann_init");
    const double e2 = eps * eps;
    State s;
    s.t = 0.0;
    s.rho = ScalarField(g);
    s.mom = VectorField(g);
    for (int k = 0; k < g.cells(); ++k) {
        const double x = g.cell_center(k)[0];
        double rho, m;
        if (x <= 0.2 || x > 0.8) {
            rho = 1.0;
            m = 1.0 - e2 / 2.0;
        } else if (x <= 0.3) {
            rho = 1.0 + e2;
            m = 1.0;
        } else if (x <= 0.7) {
            rho = 1.0;
            m = 1.0 + e2 / 2.0;
        } else {
            rho = 1.0 - e2;
            m = 1.0;
        }
        s.rho[k] = rho;
        s.mom[0][k] = m;
    }
    return s;
}

State gresho_init(const Grid& g, double eps) {
    require_dim(g, 2, "gresho_init");
    const double R = 0.4;
    const double gamma = 1.4;
    const double u10 = 0.1;

    // u_theta(r)/r, finite at the center.
    const auto q = [R](double r) {
        if (r < R / 2.0) return 2.0 / R;
        if (r < R) return 2.0 / r - 2.0 / R;
        return 0.0;
    };
    const auto p2 = [R](double r) {
        if (r < R / 2.0) return 2.0 * r * r / (R * R) + 2.0 - std::log(16.0);
        if (r < R) return 2.0 * r * r / (R * R) - 8.0 * r / R + 4.0 * std::log(r / R) + 6.0;
        return 0.0;
    };
    const auto radius = [](std::array<double, 2> x) {
        return std::sqrt((x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5));
    };

    return from_primitive(
        g,
        [&](std::array<double, 2> x) { return 1.0 + eps * eps * p2(radius(x)) / gamma; },
        {[&](std::array<double, 2> x) { return u10 - (x[1] - 0.5) * q(radius(x)); },
         [&](std::array<double, 2> x) { return (x[0] - 0.5) * q(radius(x)); }});
}

State vortex_init(const Grid& g, double eps) {
    require_dim(g, 2, "vortex_init");
    const auto kfun = [](double q) {
        return 2.0 * std::cos(q) + 2.0 * q * std::sin(q) + 0.125 * std::cos(2.0 * q) +
               0.25 * q * std::sin(2.0 * q) + 0.75 * q * q;
    };
    const double k_pi = kfun(kPi);
    const double amp = (1.5 / (4.0 * kPi)) * (1.5 / (4.0 * kPi));
    const auto radius = [](std::array<double, 2> x) {
        return 4.0 * kPi *
               std::sqrt((x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5));
    };

    return from_primitive(
        g,
        [&](std::array<double, 2> x) {
            const double r = radius(x);
            return 110.0 + (r < kPi ? eps * eps * amp * (kfun(r) - k_pi) : 0.0);
        },
        {[&](std::array<double, 2> x) {
             const double r = radius(x);
             const double d = (r < kPi) ? 1.0 : 0.0;
             return 0.6 + 1.5 * (1.0 + std::cos(r)) * d * (0.5 - x[1]);
         },
         [&](std::array<double, 2> x) {
             const double r = radius(x);
             const double d = (r < kPi) ? 1.0 : 0.0;
             return 1.5 * (1.0 + std::cos(r)) * d * (x[0] - 0.5);
         }});
}

double ProblemPreset::cfl_for(double eps) const {
    for (const auto& [e, c] : cfl_table)
        if (std::abs(eps - e) <= 1e-12 * e) return c;
    return cfl_fallback;
}

double ProblemPreset::adaptive_c_for(double eps) const {
    for (const auto& [e, c] : c_table)
        if (std::abs(eps - e) <= 1e-12 * e) return c;
    return c_fallback;
}

Grid ProblemPreset::make_run_grid(int nx, int ny) const {
    if (dim == 1) return make_grid_1d(nx, origin[0], length[0]);
    return make_grid_2d(nx, ny, origin[0], origin[1], length[0], length[1]);
}

FluidParams ProblemPreset::make_fluid(double eps, const State& initial) const {
    FluidParams fluid;
    fluid.kappa = kappa;
    fluid.gamma = gamma;
    fluid.eps = eps;
    fluid.rho0 = initial.rho.mean();  // linearization density defaults to the domain mean
    return fluid;
}

namespace {

std::vector<ProblemPreset> build_presets() {
    std::vector<ProblemPreset> v;

    ProblemPreset spp;
    spp.name = "spp";
    spp.dim = 1;
    spp.origin = {0.0, 0.0};
    spp.length = {1.0, 1.0};
    spp.kappa = 1.0;
    spp.gamma = 2.0;
    spp.eps_list = {0.5, 0.1, 0.01};
    spp.default_eps = 0.5;
    spp.default_nx = 50;
    spp.default_t_end = 0.5;
    spp.cfl_table = {{0.5, 0.8}, {0.1, 0.8}, {0.01, 0.1}};
    spp.cfl_fallback = 0.1;
    spp.init = &spp_init;
    v.push_back(spp);

    ProblemPreset caw;
    caw.name = "caw";
    caw.dim = 1;
    caw.origin = {-1.0, 0.0};
    caw.length = {2.0, 1.0};
    caw.kappa = 1.0;
    caw.gamma = 1.4;
    caw.eps_list = {0.1};
    caw.default_eps = 0.1;
    caw.default_nx = 1000;
    caw.default_t_end = 0.08;
    caw.cfl_table = {{0.1, 0.9}};
    caw.cfl_fallback = 0.9;
    caw.init = &caw_init;
    v.push_back(caw);

    ProblemPreset riemann;
    riemann.name = "riemann";
    riemann.dim = 1;
    riemann.origin = {0.0, 0.0};
    riemann.length = {1.0, 1.0};
    riemann.kappa = 1.0;
    riemann.gamma = 2.0;
    riemann.eps_list = {0.8, 0.3, 0.05};
    riemann.default_eps = 0.8;
    riemann.default_nx = 1000;
    riemann.default_t_end = 0.05;
    riemann.cfl_table = {{0.8, 0.1}, {0.3, 0.5}, {0.05, 0.5}};
    riemann.cfl_fallback = 0.1;
    riemann.init = &riemann_init;
    v.push_back(riemann);

    ProblemPreset gresho;
    gresho.name = "gresho";
    gresho.dim = 2;
    gresho.origin = {0.0, 0.0};
    gresho.length = {1.0, 1.0};
    gresho.kappa = 1.0;
    gresho.gamma = 1.4;
    gresho.eps_list = {0.1, 0.01, 0.001};
    gresho.default_eps = 0.1;
    gresho.default_nx = 100;
    gresho.default_t_end = 0.4 * kPi;  // one revolution of the vortex core
    gresho.cfl_table = {{0.1, 0.5}, {0.01, 0.5}, {0.001, 0.1}};
    gresho.cfl_fallback = 0.1;
    gresho.c_table = {{0.1, 100.0}, {0.01, 200.0}, {0.001, 200.0}};
    gresho.c_fallback = 200.0;
    gresho.init = &gresho_init;
    v.push_back(gresho);

    // Same problem with the smaller adaptive factor used for the Mach-ratio
    // contour runs at eps = 0.1.
    ProblemPreset gresho_contour = gresho;
    gresho_contour.name = "gresho_contour";
    gresho_contour.c_table = {{0.1, 30.0}, {0.01, 200.0}, {0.001, 200.0}};
    v.push_back(gresho_contour);

    ProblemPreset vortex;
    vortex.name = "vortex";
    vortex.dim = 2;
    vortex.origin = {0.0, 0.0};
    vortex.length = {1.0, 1.0};
    vortex.kappa = 1.0;
    vortex.gamma = 1.4;
    vortex.eps_list = {0.1, 0.01};
    vortex.default_eps = 0.1;
    vortex.default_nx = 100;
    vortex.default_t_end = 1.0 / 0.6;  // one period of the background drift
    vortex.cfl_table = {{0.1, 0.5}, {0.01, 0.5}};
    vortex.cfl_fallback = 0.5;
    vortex.c_table = {{0.1, 30.0}, {0.01, 200.0}};
    vortex.c_fallback = 200.0;
    vortex.init = &vortex_init;
    v.push_back(vortex);

    return v;
}

}  // namespace

const ProblemPreset& preset(const std::string& name) {
    static const std::vector<ProblemPreset> presets = build_presets();
    for (const auto& p : presets)
        if (p.name == name) return p;
    throw UnknownProblem("unknown problem '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"spp", "caw", "riemann", "gresho", "gresho_contour", "vortex"};
}

}  // namespace apflow
