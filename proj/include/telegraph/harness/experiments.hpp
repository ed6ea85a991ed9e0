#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telegraph/density.hpp"
#include "telegraph/harness/config.hpp"

namespace telegraph::harness {

struct ConvergenceRow {
    double epsilon = 0.0;
    double t = 0.0;
    double l1_error_pde = 0.0;
    double l1_error_mc = 0.0;  ///< NaN without Monte Carlo
    double mass_solver = 0.0;
    double mass_limit = 0.0;
    double killed_fraction = 0.0;  ///< solver killed mass / initial mass
    double edge_leakage = 0.0;
    double runtime_s = 0.0;  ///< 0 unless report_runtime
    // JSON summary only
    double mc_killed_fraction = 0.0;
    double mc_solver_l1 = 0.0;
    double mc_standard_error = 0.0;
    std::size_t steps = 0;
};

struct ConvergenceReport {
    Mode mode = Mode::NoKillLimit;
    std::vector<ConvergenceRow> rows;  ///< in input epsilon order
    double initial_mass = 0.0;
    std::optional<double> analytic_survival;  ///< kill limit only
    bool monotone_decay = false;
    std::vector<std::string> warnings;

    [[nodiscard]] bool passed() const { return monotone_decay; }
};

/// Initial two-line density described by the config.
[[nodiscard]] TwoLineDensity initial_density(const ExperimentConfig& config);

/// Limit density on S: collapse P phi to one line, evolve by the limit
/// semigroup, spread back half on each line.
[[nodiscard]] TwoLineDensity limit_density(const ExperimentConfig& config, const TwoLineDensity& d0);

/// Epsilon sweep against skew Brownian motion. Requires NoKillLimit.
[[nodiscard]] ConvergenceReport run_convergence_no_kill(const ExperimentConfig& config, unsigned threads = 1);
/// Epsilon sweep against minimal Brownian motion. Requires KillLimit.
[[nodiscard]] ConvergenceReport run_convergence_kill(const ExperimentConfig& config, unsigned threads = 1);

struct Snapshot {
    double epsilon = 0.0;
    TwoLineDensity solver;
    std::optional<TwoLineDensity> mc;
    double killed_solver = 0.0;
    double killed_mc = 0.0;
    double edge_leakage = 0.0;
};

/// Solver (and optional Monte Carlo) densities at t_macro for every epsilon.
[[nodiscard]] std::vector<Snapshot> run_simulation(const ExperimentConfig& config, unsigned threads = 1);

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string relation = "<=";  ///< passes when measured <relation> tolerance
    bool passed = false;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool passed() const;
};

/// Identity battery over the analytic kernels, cosine families, eigen data and transport.
[[nodiscard]] ValidationReport run_kernel_validation(const ExperimentConfig& config, unsigned threads = 1);

struct KernelTableRow {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double gamma_value = 0.0;
    std::string side;  ///< "plus" for x > 0, "minus" for x < 0
};

[[nodiscard]] std::vector<KernelTableRow> kernel_table(const ExperimentConfig& config);

}  // namespace telegraph::harness
