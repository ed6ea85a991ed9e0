#include "telegraph/harness/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace telegraph::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_json(const json& doc, const fs::path& path) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

json maybe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json config_block(const ExperimentConfig& config) { return to_json(config); }

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_convergence_csv(const ConvergenceReport& report, std::ostream& out) {
    out << kConvergenceHeader << '\n';
    for (const auto& r : report.rows) {
        out << format_number(r.epsilon) << ',' << format_number(r.t) << ',' << format_number(r.l1_error_pde) << ','
            << format_number(r.l1_error_mc) << ',' << format_number(r.mass_solver) << ','
            << format_number(r.mass_limit) << ',' << format_number(r.killed_fraction) << ','
            << format_number(r.edge_leakage) << ',' << format_number(r.runtime_s) << '\n';
    }
}

void write_validation_csv(const ValidationReport& report, std::ostream& out) {
    out << kValidationHeader << '\n';
    for (const auto& c : report.checks) {
        out << c.name << ',' << format_number(c.measured) << ',' << c.relation << ',' << format_number(c.tolerance)
            << ',' << (c.passed ? "true" : "false") << '\n';
    }
}

void write_kernel_table_csv(const std::vector<KernelTableRow>& rows, std::ostream& out) {
    out << kKernelTableHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.t) << ',' << format_number(r.x) << ',' << format_number(r.y) << ','
            << format_number(r.gamma_value) << ',' << r.side << '\n';
    }
}

void write_density_csv(const std::vector<Snapshot>& snapshots, std::ostream& out) {
    out << kDensityHeader << '\n';
    for (const auto& s : snapshots) {
        const Grid& g = s.solver.grid;
        for (int line : {1, -1}) {
            for (std::size_t i = 0; i < g.n_cells(); ++i) {
                const double mc = s.mc ? s.mc->line(line)[i] : std::nan("");
                out << format_number(s.epsilon) << ',' << format_number(g.center(i)) << ',' << line << ','
                    << format_number(s.solver.line(line)[i]) << ',' << format_number(mc) << '\n';
            }
        }
    }
}

json summary_json(const ConvergenceReport& report, const ExperimentConfig& config) {
    json doc;
    doc["mode"] = std::string(mode_name(report.mode));
    doc["passed"] = report.passed();
    doc["monotone_decay"] = report.monotone_decay;
    doc["initial_mass"] = report.initial_mass;
    if (report.analytic_survival) doc["analytic_survival"] = *report.analytic_survival;
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"epsilon", r.epsilon},
                        {"l1_error_pde", r.l1_error_pde},
                        {"l1_error_mc", maybe(r.l1_error_mc)},
                        {"mass_solver", r.mass_solver},
                        {"mass_limit", r.mass_limit},
                        {"killed_fraction", r.killed_fraction},
                        {"mc_killed_fraction", maybe(r.mc_killed_fraction)},
                        {"mc_solver_l1", maybe(r.mc_solver_l1)},
                        {"mc_standard_error", maybe(r.mc_standard_error)},
                        {"edge_leakage", r.edge_leakage},
                        {"steps", r.steps}});
    }
    doc["rows"] = rows;
    doc["warnings"] = report.warnings;
    doc["config"] = config_block(config);
    return doc;
}

json summary_json(const ValidationReport& report, const ExperimentConfig& config) {
    json doc;
    doc["mode"] = "kernel_validation";
    doc["passed"] = report.passed();
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"check", c.name},
                          {"measured", maybe(c.measured)},
                          {"relation", c.relation},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    }
    doc["checks"] = checks;
    doc["config"] = config_block(config);
    return doc;
}

json summary_json(const std::vector<Snapshot>& snapshots, const ExperimentConfig& config) {
    json doc;
    doc["mode"] = "simulate";
    json rows = json::array();
    for (const auto& s : snapshots) {
        rows.push_back({{"epsilon", s.epsilon},
                        {"mass_solver", total_mass(s.solver)},
                        {"killed_fraction_solver", s.killed_solver},
                        {"killed_fraction_mc", s.mc ? json(s.killed_mc) : json(nullptr)},
                        {"edge_leakage", s.edge_leakage}});
    }
    doc["rows"] = rows;
    doc["config"] = config_block(config);
    return doc;
}

fs::path emit_report(const ConvergenceReport& report, const ExperimentConfig& config, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path csv = dir / "convergence.csv";
    auto out = open_out(csv);
    write_convergence_csv(report, out);
    write_json(summary_json(report, config), dir / "summary.json");
    return csv;
}

fs::path emit_report(const ValidationReport& report, const ExperimentConfig& config, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path csv = dir / "validation.csv";
    auto out = open_out(csv);
    write_validation_csv(report, out);
    write_json(summary_json(report, config), dir / "summary.json");
    return csv;
}

fs::path emit_report(const std::vector<Snapshot>& snapshots, const ExperimentConfig& config, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path csv = dir / "density.csv";
    auto out = open_out(csv);
    write_density_csv(snapshots, out);
    write_json(summary_json(snapshots, config), dir / "summary.json");
    return csv;
}

fs::path emit_report(const std::vector<KernelTableRow>& rows, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path csv = dir / "kernel_table.csv";
    auto out = open_out(csv);
    write_kernel_table_csv(rows, out);
    return csv;
}

}  // namespace telegraph::harness
