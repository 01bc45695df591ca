#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "apflow/diagnostics.hpp"

namespace apflow {

/// Shortest round-trip decimal representation ('.' separator, no locale).
std::string format_double(double x);

/// CSV writers: '\n' line endings, header row, one record per line.
/// Deterministic kernels plus this formatting make re-runs byte-identical.
void write_energies_header(std::ostream& os);
void write_energies_row(std::ostream& os, const EnergyRecord& rec);

void write_fields_csv(const std::filesystem::path& path, const State& s);

void write_summary(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

void write_eoc_csv(const std::filesystem::path& path, const std::vector<EocRow>& rows);

}  // namespace apflow
