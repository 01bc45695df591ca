#include "apflow/runner.hpp"

#include <cstdlib>
#include <fstream>

#include "apflow/benchmarks.hpp"
#include "apflow/io.hpp"

namespace apflow {

namespace {

std::filesystem::path resolve_out_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("APFLOW_OUT"); env && *env)
        return std::filesystem::path(env);
    return std::filesystem::path(cfg.out_dir);
}

struct Problem {
    Grid grid;
    State initial;
    FluidParams fluid;
    SchemeParams scheme;
};

Problem setup(const RunConfig& cfg) {
    const ProblemPreset& p = preset(cfg.problem);
    Problem pr;
    pr.grid = p.make_run_grid(cfg.nx, cfg.ny);
    pr.initial = p.init(pr.grid, cfg.eps);
    pr.fluid.kappa = cfg.kappa;
    pr.fluid.gamma = cfg.gamma;
    pr.fluid.eps = cfg.eps;
    pr.fluid.rho0 = (cfg.rho0 > 0.0) ? cfg.rho0 : pr.initial.rho.mean();
    pr.scheme.cfl = cfg.cfl;
    pr.scheme.lambda_mode = cfg.lambda_mode;
    pr.scheme.lambda0 = cfg.lambda0;
    pr.scheme.adaptive_c = cfg.lambda_c;
    pr.scheme.t_end = cfg.t_end;
    pr.scheme.max_steps = cfg.max_steps;
    pr.scheme.jump_floor = cfg.jump_floor;
    return pr;
}

std::string snapshot_name(long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fields_%06ld.csv", step);
    return buf;
}

}  // namespace

RunArtifacts cmd_run(const RunConfig& cfg) {
    Problem pr = setup(cfg);
    RunArtifacts art;
    art.out_dir = resolve_out_dir(cfg);
    std::filesystem::create_directories(art.out_dir);

    std::ofstream energies_os(art.out_dir / "energies.csv", std::ios::binary);
    if (!energies_os) throw Error("cannot open energies.csv for writing");
    write_energies_header(energies_os);

    art.initial_energies = energies(pr.initial, pr.fluid);
    write_energies_row(energies_os, art.initial_energies);
    energies_os.flush();
    write_fields_csv(art.out_dir / snapshot_name(0), pr.initial);

    art.min_rho_over_run = art.initial_energies.min_rho;
    double prev_total = art.initial_energies.total;
    art.max_energy_increase = -std::numeric_limits<double>::infinity();

    const StepObserver observer = [&](const StepRecord& rec) {
        EnergyRecord er = energies(rec.after, pr.fluid);
        er.dt = rec.dt;
        er.lambda = rec.lambda;
        write_energies_row(energies_os, er);
        energies_os.flush();

        art.min_rho_over_run = std::min(art.min_rho_over_run, er.min_rho);
        art.max_energy_increase = std::max(art.max_energy_increase, er.total - prev_total);
        prev_total = er.total;

        if (cfg.record_identities) {
            const auto B = [&](double r) { return pr.fluid.pressure_potential(r); };
            const auto dB = [&](double r) { return pr.fluid.potential_d1(r); };
            double scale = 0.0;
            const double rr =
                renorm_residual(rec.before, rec.after, rec.lambda, rec.dt, B, dB, &scale);
            art.max_renorm_residual = std::max(art.max_renorm_residual, rr);
            const double kr =
                ke_balance_residual(rec.before, rec.after, rec.lambda, rec.dt, pr.fluid, &scale);
            art.max_ke_balance_residual = std::max(art.max_ke_balance_residual, kr);
        }
        if (cfg.snapshot_every > 0 && rec.index % cfg.snapshot_every == 0)
            write_fields_csv(art.out_dir / snapshot_name(rec.index), rec.after);
    };

    RunResult res = run(pr.initial, pr.scheme, pr.fluid, pr.grid, observer);
    art.steps = res.steps;
    art.final_state = std::move(res.final_state);
    art.final_energies = energies(art.final_state, pr.fluid);
    art.final_ap = ap_indicators(art.final_state, pr.fluid);
    if (art.steps == 0) art.max_energy_increase = 0.0;

    const bool final_already_written =
        cfg.snapshot_every > 0 && art.steps > 0 && art.steps % cfg.snapshot_every == 0;
    if (art.steps > 0 && !final_already_written)
        write_fields_csv(art.out_dir / snapshot_name(art.steps), art.final_state);

    std::vector<std::pair<std::string, std::string>> summary;
    summary.emplace_back("problem", cfg.problem);
    summary.emplace_back("epsilon", format_double(cfg.eps));
    summary.emplace_back("nx", std::to_string(cfg.nx));
    if (pr.grid.dim == 2) summary.emplace_back("ny", std::to_string(cfg.ny));
    summary.emplace_back("final_time", format_double(art.final_state.t));
    summary.emplace_back("steps", std::to_string(art.steps));
    summary.emplace_back("min_rho", format_double(art.min_rho_over_run));
    summary.emplace_back("max_energy_increase", format_double(art.max_energy_increase));
    summary.emplace_back("ap_max_density_deviation",
                         format_double(art.final_ap.max_density_deviation));
    summary.emplace_back("ap_div_u_l1", format_double(art.final_ap.div_u_l1));
    summary.emplace_back("ap_div_u_l1_over_eps2", format_double(art.final_ap.div_u_l1_over_eps2));
    if (cfg.record_identities) {
        summary.emplace_back("max_renorm_residual_P", format_double(art.max_renorm_residual));
        summary.emplace_back("max_ke_balance_residual",
                             format_double(art.max_ke_balance_residual));
    }
    write_summary(art.out_dir / "summary.txt", summary);
    return art;
}

ConvergeResult cmd_converge(const RunConfig& cfg, const std::vector<int>& n_list,
                            int reference_n) {
    const ProblemPreset& p = preset(cfg.problem);
    for (int n : n_list) {
        if (n < 4) throw BadValue("converge: grid size " + std::to_string(n) + " below 4");
        if (reference_n % n != 0)
            throw NonNestedGrids("converge: reference " + std::to_string(reference_n) +
                                 " not divisible by " + std::to_string(n));
    }

    const auto solve_on = [&](int n) {
        RunConfig c = cfg;
        c.nx = n;
        c.ny = n;
        Problem pr = setup(c);
        RunResult res = run(pr.initial, pr.scheme, pr.fluid, pr.grid, {});
        return std::move(res.final_state);
    };

    const State ref = solve_on(reference_n);
    const VectorField ref_u = ref.velocity();

    std::vector<std::pair<int, double>> rho_err, u_err;
    for (int n : n_list) {
        const State coarse = solve_on(n);
        rho_err.emplace_back(n, l2_error(coarse.rho, ref.rho));
        u_err.emplace_back(n, l2_error(coarse.velocity(), ref_u));
    }

    ConvergeResult out;
    out.out_dir = resolve_out_dir(cfg);
    std::filesystem::create_directories(out.out_dir);
    out.rho_rows = eoc_table(rho_err, p.length[0]);
    out.u_rows = eoc_table(u_err, p.length[0]);
    write_eoc_csv(out.out_dir / "eoc_rho.csv", out.rho_rows);
    write_eoc_csv(out.out_dir / "eoc_u.csv", out.u_rows);
    return out;
}

}  // namespace apflow
