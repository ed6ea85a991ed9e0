#pragma once

#include <filesystem>
#include <ostream>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "telegraph/harness/config.hpp"
#include "telegraph/harness/experiments.hpp"

namespace telegraph::harness {

inline constexpr std::string_view kConvergenceHeader =
    "epsilon,t,l1_error_pde,l1_error_mc,mass_solver,mass_limit,killed_fraction,edge_leakage,runtime_s";
inline constexpr std::string_view kKernelTableHeader = "t,x,y,gamma_value,side";
inline constexpr std::string_view kValidationHeader = "check,measured,relation,tolerance,passed";
inline constexpr std::string_view kDensityHeader = "epsilon,x,line,density_pde,density_mc";

/// Shortest decimal form that round-trips; "nan" / "inf" for non-finite values.
[[nodiscard]] std::string format_number(double v);

void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);
void write_validation_csv(const ValidationReport& report, std::ostream& out);
void write_kernel_table_csv(const std::vector<KernelTableRow>& rows, std::ostream& out);
void write_density_csv(const std::vector<Snapshot>& snapshots, std::ostream& out);

[[nodiscard]] nlohmann::json summary_json(const ConvergenceReport& report, const ExperimentConfig& config);
[[nodiscard]] nlohmann::json summary_json(const ValidationReport& report, const ExperimentConfig& config);
[[nodiscard]] nlohmann::json summary_json(const std::vector<Snapshot>& snapshots, const ExperimentConfig& config);

/// Writes <dir>/convergence.csv and <dir>/summary.json; returns the CSV path.
std::filesystem::path emit_report(const ConvergenceReport& report, const ExperimentConfig& config,
                                  const std::filesystem::path& dir);
/// Writes <dir>/validation.csv and <dir>/summary.json.
std::filesystem::path emit_report(const ValidationReport& report, const ExperimentConfig& config,
                                  const std::filesystem::path& dir);
/// Writes <dir>/density.csv and <dir>/summary.json.
std::filesystem::path emit_report(const std::vector<Snapshot>& snapshots, const ExperimentConfig& config,
                                  const std::filesystem::path& dir);
/// Writes <dir>/kernel_table.csv.
std::filesystem::path emit_report(const std::vector<KernelTableRow>& rows, const std::filesystem::path& dir);

}  // namespace telegraph::harness
