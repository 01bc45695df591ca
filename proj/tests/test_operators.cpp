#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "apflow/operators.hpp"

using namespace apflow;

namespace {

ScalarField field_1d(const Grid& g, std::initializer_list<double> vals) {
    ScalarField f(g);
    int k = 0;
    for (double v : vals) f[k++] = v;
    return f;
}

ScalarField random_field(const Grid& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField f(g);
    for (auto& x : f.v) x = dist(rng);
    return f;
}

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
    Eigen::MatrixXd out(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out(i, j) = m.at(i, j);
    return out;
}

}  // namespace

TEST_CASE("face jump and average") {
    const Grid g = make_grid_1d(4);
    const ScalarField c(g, 3.5);
    const FaceRef f01{0, 0, +1};
    CHECK(face_jump(c, f01) == 0.0);
    CHECK(face_avg(c, f01) == 3.5);

    const ScalarField f = field_1d(g, {1.0, 3.0, 1.0, 3.0});
    CHECK(face_jump(f, f01) == 2.0);
    CHECK(face_avg(f, f01) == 2.0);

    // Opposite orientation flips the jump, not the average.
    const FaceRef f10{1, 0, -1};
    CHECK(face_jump(f, f10) == -2.0);
    CHECK(face_avg(f, f10) == 2.0);
}

TEST_CASE("face product rule spot check") {
    const Grid g = make_grid_1d(4);
    const ScalarField f = field_1d(g, {1.0, 3.0, 1.0, 3.0});
    const ScalarField q = field_1d(g, {2.0, 4.0, 2.0, 4.0});
    ScalarField fq(g);
    for (int k = 0; k < 4; ++k) fq[k] = f[k] * q[k];
    const FaceRef face{0, 0, +1};
    CHECK(face_jump(fq, face) == 10.0);
    CHECK(face_avg(f, face) * face_jump(q, face) + face_jump(f, face) * face_avg(q, face) ==
          10.0);
}

TEST_CASE("face identities hold for random fields") {
    std::mt19937 rng(99);
    for (const Grid& g : {make_grid_1d(16), make_grid_2d(8, 8)}) {
        const ScalarField f = random_field(g, rng);
        const ScalarField q = random_field(g, rng);
        ScalarField fq(g);
        for (int k = 0; k < g.cells(); ++k) fq[k] = f[k] * q[k];
        for_each_face(g, [&](const FaceRef& face) {
            const double jf = face_jump(f, face), af = face_avg(f, face);
            const double jq = face_jump(q, face), aq = face_avg(q, face);
            const double scale = std::abs(af * aq) + std::abs(jf * jq) + 1e-30;
            CHECK(std::abs(face_jump(fq, face) - (af * jq + jf * aq)) <= 1e-14 * scale);
            CHECK(std::abs(face_avg(fq, face) - (af * aq + 0.25 * jf * jq)) <= 1e-14 * scale);
        });
    }
}

TEST_CASE("div_h on frozen 1D data") {
    const Grid g = make_grid_1d(4);  // h = 0.25
    VectorField v(g);
    v[0] = field_1d(g, {0.0, 1.0, 0.0, -1.0});
    const ScalarField d = div_h(v);
    CHECK(d[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d[2] == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(d[3] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("div_h of a constant field is exactly zero") {
    for (const Grid& g : {make_grid_1d(8), make_grid_2d(4, 4)}) {
        const VectorField v(g, 2.75);
        const ScalarField d = div_h(v);
        for (int k = 0; k < g.cells(); ++k) CHECK(d[k] == 0.0);
    }
}

TEST_CASE("2D div_h ignores cross-axis variation") {
    const Grid g = make_grid_2d(6, 6);
    VectorField v(g);
    for (int k = 0; k < g.cells(); ++k)
        v[0][k] = std::sin(2.0 * M_PI * g.cell_center(k)[1]);  // depends on x2 only
    const ScalarField d = div_h(v);
    for (int k = 0; k < g.cells(); ++k) CHECK(d[k] == 0.0);
}

TEST_CASE("grad_h on frozen 1D data") {
    const Grid g = make_grid_1d(4);
    const ScalarField f = field_1d(g, {0.0, 1.0, 0.0, -1.0});
    const VectorField gr = grad_h(f);
    CHECK(gr[0][0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(gr[0][1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gr[0][2] == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(gr[0][3] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("grad-div duality on random fields") {
    std::mt19937 rng(7);
    for (const Grid& g :
         {make_grid_1d(8), make_grid_1d(32), make_grid_2d(8, 8), make_grid_2d(16, 16)}) {
        for (int it = 0; it < 25; ++it) {
            const ScalarField phi = random_field(g, rng);
            VectorField psi(g);
            for (int a = 0; a < g.dim; ++a) psi[a] = random_field(g, rng);
            const ScalarField dpsi = div_h(psi);
            const VectorField gphi = grad_h(phi);
            double lhs = 0.0, scale = 0.0;
            for (int k = 0; k < g.cells(); ++k) {
                double dot = 0.0;
                for (int a = 0; a < g.dim; ++a) dot += gphi[a][k] * psi[a][k];
                lhs += g.cell_measure() * (phi[k] * dpsi[k] + dot);
                scale += g.cell_measure() * (std::abs(phi[k] * dpsi[k]) + std::abs(dot));
            }
            CHECK(std::abs(lhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("divergence telescoping: measure-weighted sum vanishes") {
    std::mt19937 rng(11);
    for (const Grid& g : {make_grid_1d(32), make_grid_2d(12, 12)}) {
        VectorField v(g);
        for (int a = 0; a < g.dim; ++a) v[a] = random_field(g, rng);
        const ScalarField d = div_h(v);
        double sum = 0.0, scale = 0.0;
        for (int k = 0; k < g.cells(); ++k) {
            sum += g.cell_measure() * d[k];
            scale += g.cell_measure() * std::abs(d[k]);
        }
        CHECK(std::abs(sum) <= 1e-12 * scale);
    }
}

TEST_CASE("lap_compact on frozen 1D data") {
    const Grid g = make_grid_1d(4);  // h^2 = 0.0625
    const ScalarField f = field_1d(g, {1.0, 0.0, 0.0, 0.0});
    const ScalarField l = lap_compact(f);
    CHECK(l[0] == doctest::Approx(-32.0).epsilon(1e-14));
    CHECK(l[1] == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(l[2] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(l[3] == doctest::Approx(16.0).epsilon(1e-14));

    const ScalarField c(g, 4.2);
    const ScalarField lc = lap_compact(c);
    for (int k = 0; k < 4; ++k) CHECK(lc[k] == 0.0);
}

TEST_CASE("lap_wide equals div(grad) bitwise and matches the +-2 stencil") {
    std::mt19937 rng(13);
    for (const Grid& g : {make_grid_1d(8), make_grid_2d(6, 6)}) {
        const ScalarField f = random_field(g, rng);
        const ScalarField lw = lap_wide(f);
        const ScalarField composed = div_h(grad_h(f));
        for (int k = 0; k < g.cells(); ++k) CHECK(lw[k] == composed[k]);

        const double inv4h2 = 1.0 / (4.0 * g.h * g.h);
        for (int k = 0; k < g.cells(); ++k) {
            double expect = 0.0;
            for (int a = 0; a < g.dim; ++a)
                expect += (f[g.neighbor(k, a, +2)] - 2.0 * f[k] + f[g.neighbor(k, a, -2)]) *
                          inv4h2;
            CHECK(lw[k] == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("lap_wide of a constant is exactly zero") {
    const Grid g = make_grid_2d(5, 5);
    const ScalarField c(g, -3.0);
    const ScalarField lw = lap_wide(c);
    for (int k = 0; k < g.cells(); ++k) CHECK(lw[k] == 0.0);
}

TEST_CASE("dense matrices: structure and frozen values") {
    const Grid g = make_grid_1d(4);
    const DenseMatrix lc = dense_matrix(OpTag::LapCompact, g);
    CHECK(lc.at(0, 0) == doctest::Approx(-32.0).epsilon(1e-14));
    CHECK(lc.at(0, 1) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(lc.at(0, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(lc.at(0, 3) == doctest::Approx(16.0).epsilon(1e-14));

    for (const Grid& gg : {make_grid_1d(8), make_grid_2d(6, 6)}) {
        const Eigen::MatrixXd lcm = to_eigen(dense_matrix(OpTag::LapCompact, gg));
        const Eigen::MatrixXd lwm = to_eigen(dense_matrix(OpTag::LapWide, gg));
        CHECK(lcm == lcm.transpose());
        CHECK(lwm == lwm.transpose());
        Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(gg.cells(), gg.cells());
        for (int a = 0; a < gg.dim; ++a) {
            const Eigen::MatrixXd d =
                to_eigen(dense_matrix(a == 0 ? OpTag::DiffAxis0 : OpTag::DiffAxis1, gg));
            CHECK(d == (-d.transpose()).eval());  // antisymmetric circulant
            d2 += d * d;
        }
        CHECK((d2 - lwm).cwiseAbs().maxCoeff() <= 1e-12 * lwm.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("wide Laplacian kernel equals difference kernel on odd N") {
    const Grid g = make_grid_1d(5);
    const Eigen::MatrixXd d = to_eigen(dense_matrix(OpTag::DiffAxis0, g));
    const Eigen::MatrixXd lw = to_eigen(dense_matrix(OpTag::LapWide, g));
    Eigen::FullPivLU<Eigen::MatrixXd> lud(d), lulw(lw);
    lud.setThreshold(1e-10);
    lulw.setThreshold(1e-10);
    CHECK(lud.rank() == 4);
    CHECK(lulw.rank() == 4);
    // Constants span both kernels.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(5);
    CHECK((d * ones).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((lw * ones).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("dense_matrix rejects large grids") {
    CHECK_THROWS_AS(dense_matrix(OpTag::LapCompact, make_grid_1d(5000)), TooLarge);
    CHECK_THROWS_AS(dense_matrix(OpTag::DiffAxis1, make_grid_1d(8)), WrongDimension);
}
