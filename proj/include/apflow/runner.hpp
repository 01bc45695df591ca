#pragma once

#include <filesystem>
#include <vector>

#include "apflow/config.hpp"
#include "apflow/diagnostics.hpp"

namespace apflow {

/// What a run left behind, for callers that want the numbers without
/// re-reading the CSV files.
struct RunArtifacts {
    std::filesystem::path out_dir;
    long steps = 0;
    EnergyRecord initial_energies;
    EnergyRecord final_energies;
    ApIndicators final_ap;
    double min_rho_over_run = 0.0;
    double max_energy_increase = 0.0;      // max over steps of E_new - E_old
    double max_renorm_residual = 0.0;      // only tracked with record_identities
    double max_ke_balance_residual = 0.0;
    State final_state;
};

/// Execute one configured run: writes energies.csv (streamed, so partial
/// output survives a failure), fields_{step}.csv snapshots, and
/// summary.txt. APFLOW_OUT overrides the output directory.
RunArtifacts cmd_run(const RunConfig& cfg);

struct ConvergeResult {
    std::filesystem::path out_dir;
    std::vector<EocRow> rho_rows;
    std::vector<EocRow> u_rows;
};

/// Grid-refinement study: run the reference grid and every entry of
/// n_list to the same end time, write eoc_rho.csv / eoc_u.csv. Every n
/// must divide reference_n (NonNestedGrids otherwise).
ConvergeResult cmd_converge(const RunConfig& cfg, const std::vector<int>& n_list, int reference_n);

}  // namespace apflow
