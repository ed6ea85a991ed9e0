#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "telegraph/params.hpp"

namespace telegraph::harness {

/// Bad or inconsistent configuration. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { NoKillLimit, KillLimit, KernelValidation, Simulate, KernelTable };

[[nodiscard]] std::string_view mode_name(Mode mode);
[[nodiscard]] std::optional<Mode> mode_from_name(std::string_view name);

struct RawParams {
    double p = 0.5;
    double p_prime = 0.5;
    double q = 0.5;
    double q_prime = 0.5;
};

struct GridSpec {
    double half_width = 8.0;
    std::size_t n_cells = 4096;
};

enum class InitialKind { Gaussian, Point };

struct InitialSpec {
    InitialKind kind = InitialKind::Gaussian;
    double mean = -1.0;  ///< Gaussian center
    double std = 0.5;    ///< Gaussian spread
    double x = -1.0;     ///< point-mass position
    int line = 1;
};

struct McSpec {
    std::uint64_t n_particles = 0;  ///< 0 disables Monte Carlo
    std::uint64_t seed = 20240601;
};

struct KernelTableSpec {
    std::vector<double> times{0.25, 1.0, 4.0};
    std::vector<double> x{-1.0, -0.1, 0.1, 1.0};
    std::vector<double> y;  ///< empty means -4, -3.9, ..., 4
};

struct ExperimentConfig {
    Mode mode = Mode::NoKillLimit;
    RawParams raw;
    InterfaceParams params;
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    double t_macro = 1.0;
    GridSpec grid;
    InitialSpec initial;
    McSpec mc;
    double flip_intensity = 1.0;
    double cfl = 1.0;
    bool report_runtime = false;
    KernelTableSpec kernel_table;
    std::string output = "out";
};

/// Parses and validates a config. When `mode` is given it is the mode implied
/// by the caller (the CLI subcommand); a "mode" key in the document must agree.
[[nodiscard]] ExperimentConfig parse_config_json(const nlohmann::json& doc, std::optional<Mode> mode = std::nullopt);
[[nodiscard]] ExperimentConfig parse_config_text(std::string_view text, std::optional<Mode> mode = std::nullopt);
[[nodiscard]] ExperimentConfig parse_config(const std::filesystem::path& file, std::optional<Mode> mode = std::nullopt);

/// Serializes every field, so parse(to_json(c)) reproduces c.
[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& config);

/// Re-checks all invariants and refreshes the derived interface probabilities.
void validate(ExperimentConfig& config);

/// Closest known key by edit distance, if it is plausibly a typo.
[[nodiscard]] std::optional<std::string> suggest_key(std::string_view unknown, const std::vector<std::string>& known);

}  // namespace telegraph::harness
