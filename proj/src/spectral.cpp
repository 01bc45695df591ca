#include "apflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace apflow {

namespace detail {
bool corrupt_symbols_for_testing = false;
}

namespace {

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};
using ComplexBuf = std::unique_ptr<std::complex<double>[], FftwDeleter>;

ComplexBuf alloc_complex(int n) {
    auto* p = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    return ComplexBuf(p);
}

/// Forward/backward c2c plans for one grid size. Plans are created once
/// per size with FFTW_ESTIMATE, so the radix decomposition is fixed and
/// repeated runs are bit-identical.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

const PlanPair& plans_for(const Grid& g) {
    static std::mutex mtx;
    static std::map<std::array<int, 3>, std::unique_ptr<PlanPair>> cache;
    const std::array<int, 3> key{g.dim, g.n[0], g.n[1]};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto pp = std::make_unique<PlanPair>();
        const int nc = g.cells();
        ComplexBuf in = alloc_complex(nc);
        ComplexBuf out = alloc_complex(nc);
        auto* fin = reinterpret_cast<fftw_complex*>(in.get());
        auto* fout = reinterpret_cast<fftw_complex*>(out.get());
        if (g.dim == 1) {
            pp->fwd = fftw_plan_dft_1d(g.n[0], fin, fout, FFTW_FORWARD, FFTW_ESTIMATE);
            pp->bwd = fftw_plan_dft_1d(g.n[0], fin, fout, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            // Field layout is axis-0 fastest; FFTW's first extent is the
            // slowest, so axis 1 goes first.
            pp->fwd = fftw_plan_dft_2d(g.n[1], g.n[0], fin, fout, FFTW_FORWARD, FFTW_ESTIMATE);
            pp->bwd = fftw_plan_dft_2d(g.n[1], g.n[0], fin, fout, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        it = cache.emplace(key, std::move(pp)).first;
    }
    return *it->second;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Inverse transform of per-mode values, normalized by 1/N, with the
/// imaginary residue checked against 1e-13 * scale and discarded.
std::vector<double> inverse_transform_real(const Grid& g, const std::vector<std::complex<double>>& modes,
                                           double scale, const char* what) {
    const int nc = g.cells();
    const PlanPair& pp = plans_for(g);
    ComplexBuf in = alloc_complex(nc);
    ComplexBuf out = alloc_complex(nc);
    for (int k = 0; k < nc; ++k) in[k] = modes[k];
    fftw_execute_dft(pp.bwd, reinterpret_cast<fftw_complex*>(in.get()),
                     reinterpret_cast<fftw_complex*>(out.get()));
    const double norm = 1.0 / static_cast<double>(nc);
    std::vector<double> res(nc);
    double imag_max = 0.0;
    for (int k = 0; k < nc; ++k) {
        res[k] = out[k].real() * norm;
        imag_max = std::max(imag_max, std::abs(out[k].imag()) * norm);
    }
    if (imag_max > 1e-13 * std::max(scale, 1e-300))
        throw InternalError(std::string(what) + ": imaginary residue " + std::to_string(imag_max) +
                            " exceeds tolerance");
    return res;
}

/// Reversed inverse-operator kernel for the 1D convolution path:
/// kr[m] = kernel[(N-m) % N], so x[K] = sum_m kr[m] * b[(K+m) % N].
std::vector<double> build_kernel_1d(const Grid& g, const std::vector<double>& symbol,
                                    const char* what) {
    const int n = g.n[0];
    std::vector<std::complex<double>> inv(n);
    for (int j = 0; j < n; ++j) inv[j] = 1.0 / symbol[j];
    const std::vector<double> kernel = inverse_transform_real(g, inv, 1.0, what);
    std::vector<double> rev(n);
    rev[0] = kernel[0];
    for (int m = 1; m < n; ++m) rev[m] = kernel[n - m];
    return rev;
}

/// Circular convolution with the reversed kernel. Every output cell uses
/// the same relative-offset summation order, so the result commutes
/// bitwise with cyclic shifts of b.
std::vector<double> convolve_1d(const std::vector<double>& rev_kernel,
                                const std::vector<double>& b) {
    const int n = static_cast<int>(b.size());
    std::vector<double> b2(2 * n);
    for (int k = 0; k < n; ++k) b2[k] = b2[k + n] = b[k];
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        const double* bw = b2.data() + k;
        for (int m = 0; m < n; ++m) acc += rev_kernel[m] * bw[m];
        x[k] = acc;
    }
    return x;
}

ScalarField solve_by_symbol(const ScalarField& b, const Symbols& sym,
                            const std::vector<double>& symbol,
                            const std::vector<double>& rev_kernel, const char* what) {
    if (!b.grid.same_as(sym.grid)) throw InternalError("spectral solve: grid mismatch");
    ScalarField x(b.grid);
    if (sym.grid.dim == 1) {
        x.v = convolve_1d(rev_kernel, b.v);
        return x;
    }
    const int nc = b.grid.cells();
    const PlanPair& pp = plans_for(b.grid);
    ComplexBuf in = alloc_complex(nc);
    ComplexBuf out = alloc_complex(nc);
    for (int k = 0; k < nc; ++k) in[k] = b.v[k];
    fftw_execute_dft(pp.fwd, reinterpret_cast<fftw_complex*>(in.get()),
                     reinterpret_cast<fftw_complex*>(out.get()));
    std::vector<std::complex<double>> modes(nc);
    for (int k = 0; k < nc; ++k) modes[k] = out[k] / symbol[k];
    x.v = inverse_transform_real(b.grid, modes, max_abs(b.v), what);
    return x;
}

}  // namespace

Symbols build_symbols(const Grid& g, double dt, double lambda, const FluidParams& fluid) {
    if (!(dt > 0.0)) throw BadValue("build_symbols: dt must be positive");
    if (!(lambda >= 0.0)) throw BadValue("build_symbols: lambda must be nonnegative");
    if (!(fluid.eps > 0.0)) throw BadValue("build_symbols: eps must be positive");

    Symbols sym;
    sym.grid = g;
    sym.dt = dt;
    sym.lambda = lambda;
    sym.h = g.h;
    sym.eps = fluid.eps;
    sym.dp0 = fluid.dp0();

    // Per-axis tables with enforced even/odd symmetry, so the 2D symbol
    // arrays are exactly Hermitian-compatible and eta vanishes exactly on
    // the nullspace modes (j = 0 and, for even N, j = N/2).
    std::array<std::vector<double>, 2> mu_ax, om_ax;
    for (int a = 0; a < g.dim; ++a) {
        const int na = g.n[a];
        mu_ax[a].resize(na);
        om_ax[a].resize(na);
        sym.eta[a].resize(na);
        const double invh = 1.0 / g.h;
        const double invh2 = invh * invh;
        for (int j = 0; j < na; ++j) {
            const int m = std::min(j, na - j);
            const double theta = 2.0 * std::numbers::pi * m / na;
            const double sn = (2 * m == na || m == 0) ? 0.0 : std::sin(theta);
            mu_ax[a][j] = (2.0 * std::cos(theta) - 2.0) * invh2;
            om_ax[a][j] = -(sn * sn) * invh2;
            sym.eta[a][j] = (j <= na / 2 ? sn : -sn) * invh;
        }
        mu_ax[a][0] = 0.0;  // exact zero mode
    }

    const int nc = g.cells();
    sym.mu.resize(nc);
    sym.omega.resize(nc);
    sym.v.resize(nc);
    sym.s.resize(nc);
    const double stiff = (dt / fluid.eps) * (dt / fluid.eps) * sym.dp0;
    for (int k = 0; k < nc; ++k) {
        const auto mi = g.multi_index(k);
        double mu = mu_ax[0][mi[0]];
        double om = om_ax[0][mi[0]];
        if (g.dim == 2) {
            mu += mu_ax[1][mi[1]];
            om += om_ax[1][mi[1]];
        }
        sym.mu[k] = mu;
        sym.omega[k] = om;
        const double v = 1.0 - dt * lambda * g.h * mu;
        const double s = v + stiff * (-om) / v;
        if (!(v >= 1.0) || !(s >= 1.0))
            throw InternalError("build_symbols: symbol below 1 at mode " + std::to_string(k));
        sym.v[k] = v;
        sym.s[k] = s;
    }

    if (detail::corrupt_symbols_for_testing && nc > 2) {
        // Perturb a mirrored mode pair so the corrupted operator is still
        // real-valued but no longer the inverse the oracle expects.
        const int mirror = g.index((g.n[0] - 1) % g.n[0], 0);
        sym.v[1] *= 1.001;
        sym.v[mirror] *= 1.001;
        sym.s[1] *= 1.001;
        sym.s[mirror] *= 1.001;
    }

    if (g.dim == 1) {
        sym.helm_kernel = build_kernel_1d(g, sym.v, "helmholtz kernel");
        sym.mass_kernel = build_kernel_1d(g, sym.s, "mass kernel");
    }
    return sym;
}

ScalarField solve_helmholtz(const ScalarField& b, const Symbols& sym) {
    return solve_by_symbol(b, sym, sym.v, sym.helm_kernel, "solve_helmholtz");
}

VectorField solve_helmholtz(const VectorField& b, const Symbols& sym) {
    VectorField x(b.grid);
    for (int a = 0; a < b.dim(); ++a) x[a] = solve_helmholtz(b[a], sym);
    return x;
}

ScalarField solve_mass_operator(const ScalarField& b, const Symbols& sym) {
    return solve_by_symbol(b, sym, sym.s, sym.mass_kernel, "solve_mass_operator");
}

double projector_limit_check(const Grid& g, double dt, double lambda, const FluidParams& fluid,
                             const ScalarField& b) {
    if (fluid.eps > 1e-4)
        throw EpsilonTooLarge("projector_limit_check: eps = " + std::to_string(fluid.eps) +
                              " (needs eps <= 1e-4)");
    const Symbols sym = build_symbols(g, dt, lambda, fluid);
    const ScalarField x = solve_mass_operator(b, sym);
    const double mean = b.mean();
    double dev = 0.0;
    for (int k = 0; k < g.cells(); ++k) dev = std::max(dev, std::abs(x[k] - mean));
    return dev;
}

}  // namespace apflow
