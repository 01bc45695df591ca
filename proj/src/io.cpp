#include "apflow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "apflow/operators.hpp"

namespace apflow {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_energies_header(std::ostream& os) {
    os << "t,dt,lambda,ke,pe,total,min_rho,div_u_l1\n";
}

void write_energies_row(std::ostream& os, const EnergyRecord& r) {
    os << format_double(r.t) << ',' << format_double(r.dt) << ',' << format_double(r.lambda) << ','
       << format_double(r.ke) << ',' << format_double(r.pe) << ',' << format_double(r.total) << ','
       << format_double(r.min_rho) << ',' << format_double(r.div_u_l1) << '\n';
}

void write_fields_csv(const std::filesystem::path& path, const State& s) {
    const Grid& g = s.rho.grid;
    const VectorField u = s.velocity();
    const ScalarField divu = div_h(u);

    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    if (g.dim == 1)
        os << "x,rho,u1,div_u\n";
    else
        os << "x,y,rho,u1,u2,div_u\n";
    for (int k = 0; k < g.cells(); ++k) {
        const auto x = g.cell_center(k);
        os << format_double(x[0]);
        if (g.dim == 2) os << ',' << format_double(x[1]);
        os << ',' << format_double(s.rho[k]) << ',' << format_double(u[0][k]);
        if (g.dim == 2) os << ',' << format_double(u[1][k]);
        os << ',' << format_double(divu[k]) << '\n';
    }
}

void write_summary(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    for (const auto& [k, v] : entries) os << k << " = " << v << '\n';
}

void write_eoc_csv(const std::filesystem::path& path, const std::vector<EocRow>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << "n,h,err_l2,eoc\n";
    for (const auto& r : rows) {
        os << r.n_cells << ',' << format_double(r.h) << ',' << format_double(r.err_l2) << ',';
        if (!std::isnan(r.eoc)) os << format_double(r.eoc);
        os << '\n';
    }
}

}  // namespace apflow
