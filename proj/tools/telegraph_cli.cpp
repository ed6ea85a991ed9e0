#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/harness/config.hpp"
#include "telegraph/harness/experiments.hpp"
#include "telegraph/harness/report.hpp"

namespace th = telegraph::harness;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

th::ExperimentConfig load(const Options& o, th::Mode mode) {
    th::ExperimentConfig c = th::parse_config(o.config, mode);
    if (o.seed) c.mc.seed = *o.seed;
    if (!o.out.empty()) c.output = o.out;
    return c;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int converge(const Options& o, th::Mode mode) {
    const th::ExperimentConfig c = load(o, mode);
    const th::ConvergenceReport r = mode == th::Mode::NoKillLimit ? th::run_convergence_no_kill(c, o.threads)
                                                                  : th::run_convergence_kill(c, o.threads);
    const auto csv = th::emit_report(r, c, c.output);
    print_warnings(r.warnings);
    th::write_convergence_csv(r, std::cout);
    if (r.analytic_survival) std::cout << "analytic surviving mass: " << *r.analytic_survival << '\n';
    std::cout << (r.passed() ? "PASS" : "FAIL") << ": L1 error " << (r.monotone_decay ? "decreases" : "does not decrease")
              << " along the epsilon ladder; wrote " << csv.string() << '\n';
    return r.passed() ? kPass : kFail;
}

int validate_kernels(const Options& o) {
    const th::ExperimentConfig c = load(o, th::Mode::KernelValidation);
    const th::ValidationReport r = th::run_kernel_validation(c, o.threads);
    const auto csv = th::emit_report(r, c, c.output);
    for (const auto& check : r.checks) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.measured << ' ' << check.relation
                  << ' ' << check.tolerance << '\n';
    }
    std::cout << "wrote " << csv.string() << '\n';
    return r.passed() ? kPass : kFail;
}

int simulate(const Options& o) {
    const th::ExperimentConfig c = load(o, th::Mode::Simulate);
    const auto snaps = th::run_simulation(c, o.threads);
    const auto csv = th::emit_report(snaps, c, c.output);
    std::cout << "wrote " << csv.string() << '\n';
    return kPass;
}

int kernel_table(const Options& o) {
    const th::ExperimentConfig c = load(o, th::Mode::KernelTable);
    const auto csv = th::emit_report(th::kernel_table(c), c.output);
    std::cout << "wrote " << csv.string() << '\n';
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-line interface telegraph process: diffusion-limit experiments"};
    app.require_subcommand(1);
    Options opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out, "output directory (overrides config.output)");
        sub->add_option("--seed", opts.seed, "Monte Carlo seed (overrides config.mc.seed)");
        sub->add_option("--threads", opts.threads, "worker threads; results do not depend on it")
            ->check(CLI::PositiveNumber);
    };
    CLI::App* nokill = app.add_subcommand("converge-nokill", "epsilon sweep against skew Brownian motion");
    CLI::App* kill = app.add_subcommand("converge-kill", "epsilon sweep against minimal Brownian motion");
    CLI::App* validate = app.add_subcommand("validate-kernels", "identity battery for kernels and cosine families");
    CLI::App* sim = app.add_subcommand("simulate", "solver and Monte Carlo density snapshots");
    CLI::App* table = app.add_subcommand("kernel-table", "tabulate the skew Brownian transition density");
    for (CLI::App* sub : {nokill, kill, validate, sim, table}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }

    try {
        if (*nokill) return converge(opts, th::Mode::NoKillLimit);
        if (*kill) return converge(opts, th::Mode::KillLimit);
        if (*validate) return validate_kernels(opts);
        if (*sim) return simulate(opts);
        if (*table) return kernel_table(opts);
    } catch (const th::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const telegraph::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kFail;
}
