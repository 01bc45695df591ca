#include <doctest.h>

#include <cmath>

#include "apflow/benchmarks.hpp"
#include "apflow/operators.hpp"

using namespace apflow;

namespace {

int cell_at(const Grid& g, double x, double y = 0.0) {
    for (int k = 0; k < g.cells(); ++k) {
        const auto c = g.cell_center(k);
        if (std::abs(c[0] - x) < 1e-12 && (g.dim == 1 || std::abs(c[1] - y) < 1e-12)) return k;
    }
    REQUIRE(false);
    return -1;
}

double u_at(const State& s, int k, int axis = 0) { return s.mom[axis][k] / s.rho[k]; }

}  // namespace

TEST_CASE("spp initial data") {
    const Grid g = make_grid_1d(6);  // centers include x = 0.25
    const State s = spp_init(g, 0.5);
    const int k = cell_at(g, 0.25);
    CHECK(s.rho[k] == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(u_at(s, k) == doctest::Approx(1.5).epsilon(1e-13));

    const State tiny = spp_init(g, 1e-8);
    for (int i = 0; i < g.cells(); ++i) CHECK(tiny.rho[i] == doctest::Approx(1.0).epsilon(1e-14));

    for (int n : {50, 127}) {
        const State big = spp_init(make_grid_1d(n), 0.5);
        CHECK(std::abs(big.rho.mean() - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(spp_init(make_grid_2d(8, 8), 0.1), WrongDimension);
}

TEST_CASE("caw initial data") {
    const Grid g = make_grid_1d(6, -1.0, 2.0);  // centers at -2/3 .. include +-0.5? h=1/3
    // centers: -1 + (k+.5)/3 -> -5/6, -1/2, -1/6, 1/6, 1/2, 5/6
    const int k_half = cell_at(g, 0.5);
    const State s = caw_init(g, 0.1);
    CHECK(s.rho[k_half] == doctest::Approx(1.055).epsilon(1e-13));

    const int k_mhalf = cell_at(g, -0.5);
    CHECK(u_at(s, k_mhalf) == doctest::Approx(std::sqrt(1.4) * 2.0).epsilon(1e-13));
    CHECK(u_at(s, k_half) == doctest::Approx(-std::sqrt(1.4) * 2.0).epsilon(1e-13));

    // A center exactly at the origin: sign(0) = 0 keeps the velocity zero.
    const Grid g5 = make_grid_1d(5, -1.0, 2.0);
    const State s5 = caw_init(g5, 0.1);
    const int k0 = cell_at(g5, 0.0);
    CHECK(s5.rho[k0] == doctest::Approx(0.955).epsilon(1e-13));
    CHECK(s5.mom[0][k0] == 0.0);

    CHECK_THROWS_AS(caw_init(make_grid_2d(8, 8), 0.1), WrongDimension);
}

TEST_CASE("riemann initial data follows the half-open pieces") {
    const Grid g = make_grid_1d(20);
    const double eps = 0.3;
    const State s = riemann_init(g, eps);

    const int k1 = cell_at(g, 0.125);
    CHECK(s.rho[k1] == 1.0);
    CHECK(s.mom[0][k1] == doctest::Approx(1.0 - eps * eps / 2.0).epsilon(1e-15));  // 0.955

    const int k2 = cell_at(g, 0.275);
    CHECK(s.rho[k2] == doctest::Approx(1.0 + eps * eps).epsilon(1e-15));
    CHECK(s.mom[0][k2] == 1.0);

    const int k3 = cell_at(g, 0.475);
    CHECK(s.rho[k3] == 1.0);
    CHECK(s.mom[0][k3] == doctest::Approx(1.0 + eps * eps / 2.0).epsilon(1e-15));

    const Grid g10 = make_grid_1d(10);  // has a center at x = 0.75
    const State s05 = riemann_init(g10, 0.05);
    const int k4 = cell_at(g10, 0.75);
    CHECK(s05.rho[k4] == doctest::Approx(0.9975).epsilon(1e-15));
    CHECK(s05.mom[0][k4] == 1.0);

    CHECK_THROWS_AS(riemann_init(make_grid_2d(8, 8), 0.1), WrongDimension);
}

TEST_CASE("gresho initial data") {
    const double R = 0.4;
    const double gamma = 1.4;

    SUBCASE("profile branches meet at the seams") {
        const auto utheta_inner = [&](double r) { return 2.0 * r / R; };
        const auto utheta_outer = [&](double r) { return 2.0 * (1.0 - r / R); };
        CHECK(utheta_inner(R / 2.0) == doctest::Approx(utheta_outer(R / 2.0)).epsilon(1e-12));
        CHECK(utheta_outer(R) == doctest::Approx(0.0).epsilon(1e-12));

        const auto p2_inner = [&](double r) {
            return 2.0 * r * r / (R * R) + 2.0 - std::log(16.0);
        };
        const auto p2_outer = [&](double r) {
            return 2.0 * r * r / (R * R) - 8.0 * r / R + 4.0 * std::log(r / R) + 6.0;
        };
        CHECK(p2_inner(R / 2.0) == doctest::Approx(p2_outer(R / 2.0)).epsilon(1e-12));
        CHECK(p2_outer(R) == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("center cell and far field") {
        const Grid g = make_grid_2d(5, 5);
        const double eps = 0.1;
        const State s = gresho_init(g, eps);

        const int kc = cell_at(g, 0.5, 0.5);  // r = 0
        CHECK(u_at(s, kc, 0) == doctest::Approx(0.1).epsilon(1e-13));
        CHECK(u_at(s, kc, 1) == doctest::Approx(0.0).epsilon(1e-13));
        const double p2_center = 2.0 - std::log(16.0);
        CHECK(p2_center == doctest::Approx(-0.7726).epsilon(1e-4));
        CHECK(s.rho[kc] == doctest::Approx(1.0 + eps * eps * p2_center / gamma).epsilon(1e-13));

        const int kf = cell_at(g, 0.1, 0.1);  // r ~ 0.57 > R
        CHECK(s.rho[kf] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(u_at(s, kf, 0) == doctest::Approx(0.1).epsilon(1e-13));
        CHECK(u_at(s, kf, 1) == doctest::Approx(0.0).epsilon(1e-13));
    }

    CHECK_THROWS_AS(gresho_init(make_grid_1d(8), 0.1), WrongDimension);
}

TEST_CASE("travelling vortex initial data") {
    const Grid g = make_grid_2d(5, 5);
    const double eps = 0.1;
    const State s = vortex_init(g, eps);

    const int kf = cell_at(g, 0.1, 0.1);  // outside the r < pi support
    CHECK(s.rho[kf] == 110.0);
    CHECK(u_at(s, kf, 0) == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(u_at(s, kf, 1) == doctest::Approx(0.0).epsilon(1e-13));

    const int kc = cell_at(g, 0.5, 0.5);  // center: rotation terms vanish
    CHECK(u_at(s, kc, 0) == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(u_at(s, kc, 1) == doctest::Approx(0.0).epsilon(1e-13));
    const auto kfun = [](double q) {
        return 2.0 * std::cos(q) + 2.0 * q * std::sin(q) + 0.125 * std::cos(2.0 * q) +
               0.25 * q * std::sin(2.0 * q) + 0.75 * q * q;
    };
    CHECK(kfun(0.0) == doctest::Approx(2.125).epsilon(1e-15));
    const double amp = (1.5 / (4.0 * M_PI)) * (1.5 / (4.0 * M_PI));
    CHECK(s.rho[kc] ==
          doctest::Approx(110.0 + eps * eps * amp * (kfun(0.0) - kfun(M_PI))).epsilon(1e-13));

    SUBCASE("support is strictly inside the box: boundary cells are background") {
        const Grid g64 = make_grid_2d(64, 64);
        const State s64 = vortex_init(g64, 0.1);
        for (int i = 0; i < 64; ++i) {
            const int k = g64.index(i, 0);
            CHECK(s64.rho[k] == 110.0);
            CHECK(u_at(s64, k, 0) == doctest::Approx(0.6).epsilon(1e-14));
        }
    }

    CHECK_THROWS_AS(vortex_init(make_grid_1d(8), 0.1), WrongDimension);
}

TEST_CASE("presets: registry, positivity, fluid defaults") {
    CHECK_THROWS_AS(preset("warp"), UnknownProblem);
    for (const auto& name : preset_names()) {
        const ProblemPreset& p = preset(name);
        CHECK(p.name == name);
        const int nx_small = (p.dim == 1) ? 64 : 24;
        for (double eps : p.eps_list) {
            const Grid g = p.make_run_grid(nx_small, nx_small);
            const State s = p.init(g, eps);
            CHECK(s.rho.min() > 0.0);
            for (int k = 0; k < g.cells(); ++k) {
                CHECK(std::isfinite(s.rho[k]));
                for (int a = 0; a < g.dim; ++a) CHECK(std::isfinite(s.mom[a][k]));
            }
            const FluidParams fluid = p.make_fluid(eps, s);
            CHECK(fluid.rho0 == doctest::Approx(s.rho.mean()).epsilon(1e-14));
        }
    }

    // 1D presets stay positive on the paper-sized grids too.
    for (const char* name : {"spp", "caw", "riemann"}) {
        const ProblemPreset& p = preset(name);
        for (double eps : p.eps_list) {
            const State s = p.init(p.make_run_grid(1000, 0), eps);
            CHECK(s.rho.min() > 0.0);
        }
    }

    // CFL tables resolve per Mach number.
    CHECK(preset("spp").cfl_for(0.5) == 0.8);
    CHECK(preset("spp").cfl_for(0.01) == 0.1);
    CHECK(preset("riemann").cfl_for(0.8) == 0.1);
    CHECK(preset("riemann").cfl_for(0.05) == 0.5);
    CHECK(preset("gresho").cfl_for(0.001) == 0.1);
    CHECK(preset("gresho").adaptive_c_for(0.1) == 100.0);
    CHECK(preset("gresho_contour").adaptive_c_for(0.1) == 30.0);
    CHECK(preset("vortex").adaptive_c_for(0.1) == 30.0);
    CHECK(preset("vortex").adaptive_c_for(0.01) == 200.0);
}

TEST_CASE("spp and caw momentum perturbations telescope under div_h") {
    for (const char* name : {"spp", "caw", "riemann"}) {
        const ProblemPreset& p = preset(name);
        const Grid g = p.make_run_grid(64, 0);
        const State s = p.init(g, p.default_eps);
        const ScalarField d = div_h(s.mom);
        double sum = 0.0, scale = 0.0;
        for (int k = 0; k < g.cells(); ++k) {
            sum += g.cell_measure() * d[k];
            scale += g.cell_measure() * std::abs(d[k]);
        }
        CHECK(std::abs(sum) <= 1e-12 * std::max(scale, 1.0));
    }
}
