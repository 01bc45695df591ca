#include <CLI11.hpp>

#include <iostream>

#include "apflow/config.hpp"
#include "apflow/io.hpp"
#include "apflow/runner.hpp"
#include "apflow/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int do_run(const std::string& config_path) {
    const apflow::RunConfig cfg = apflow::parse_config_file(config_path);
    const apflow::RunArtifacts art = apflow::cmd_run(cfg);
    std::cout << "run finished: " << art.steps << " steps to t = "
              << apflow::format_double(art.final_state.t) << ", min rho "
              << apflow::format_double(art.min_rho_over_run) << "\n"
              << "outputs in " << art.out_dir.string() << "\n";
    return kExitOk;
}

int do_converge(const std::string& config_path, const std::vector<int>& n_list, int ref) {
    const apflow::RunConfig cfg = apflow::parse_config_file(config_path);
    const apflow::ConvergeResult res = apflow::cmd_converge(cfg, n_list, ref);
    std::cout << "n,h,rho_err,rho_eoc,u_err,u_eoc\n";
    for (size_t i = 0; i < res.rho_rows.size(); ++i) {
        const auto& r = res.rho_rows[i];
        const auto& u = res.u_rows[i];
        std::cout << r.n_cells << ',' << apflow::format_double(r.h) << ','
                  << apflow::format_double(r.err_l2) << ',';
        if (i > 0) std::cout << apflow::format_double(r.eoc);
        std::cout << ',' << apflow::format_double(u.err_l2) << ',';
        if (i > 0) std::cout << apflow::format_double(u.eoc);
        std::cout << '\n';
    }
    std::cout << "tables in " << res.out_dir.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume solver for the low-Mach barotropic Euler equations"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "execute one configured run");
    run_cmd->add_option("config", config_path, "config file (key = value)")->required();

    std::string conv_config;
    std::vector<int> n_list;
    int ref_n = 1000;
    auto* conv_cmd = app.add_subcommand("converge", "grid refinement study");
    conv_cmd->add_option("config", conv_config, "config file")->required();
    conv_cmd->add_option("--n", n_list, "comma-separated coarse grid sizes")
        ->required()
        ->delimiter(',');
    conv_cmd->add_option("--ref", ref_n, "reference grid size")->required();

    bool inject_fault = false;
    auto* val_cmd = app.add_subcommand("validate", "run the property suite");
    val_cmd->add_flag("--inject-fault", inject_fault,
                      "corrupt the spectral symbols to prove the suite catches it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return do_run(config_path);
        if (conv_cmd->parsed()) return do_converge(conv_config, n_list, ref_n);
        if (val_cmd->parsed())
            return apflow::cmd_validate(std::cout, inject_fault) ? kExitOk : kExitRuntime;
    } catch (const apflow::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const apflow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
