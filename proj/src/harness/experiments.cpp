#include "telegraph/harness/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "telegraph/kinetic.hpp"
#include "telegraph/skew_kernels.hpp"
#include "telegraph/transport.hpp"

namespace telegraph::harness {

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic_flag failed = ATOMIC_FLAG_INIT;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.test_and_set()) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

// Threads left per epsilon once the sweep itself is spread out.
unsigned inner_threads(unsigned threads, std::size_t n_eps) {
    const std::size_t outer = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(1, n_eps));
    return static_cast<unsigned>(std::max<std::size_t>(1, threads / outer));
}

Grid make_grid(const ExperimentConfig& c) { return Grid(c.grid.half_width, c.grid.n_cells); }

double initial_center(const ExperimentConfig& c) {
    return std::abs(c.initial.kind == InitialKind::Point ? c.initial.x : c.initial.mean);
}

void leakage_warnings(const ExperimentConfig& c, ConvergenceReport& report) {
    double worst = 0.0;
    for (const auto& row : report.rows) worst = std::max(worst, row.edge_leakage);
    const double needed = initial_center(c) + 8.0 * std::sqrt(c.t_macro);
    if (c.grid.half_width < needed) {
        std::ostringstream os;
        os << "grid.half_width = " << c.grid.half_width << " is below |x0| + 8 sqrt(t) = " << needed
           << ", so edge leakage is not guaranteed below 1e-6 (measured max " << worst << ")";
        report.warnings.push_back(os.str());
    }
    for (const auto& row : report.rows) {
        if (row.edge_leakage >= 1e-6) {
            std::ostringstream os;
            os << "edge leakage " << row.edge_leakage << " at epsilon = " << row.epsilon << " exceeds 1e-6";
            report.warnings.push_back(os.str());
        }
    }
}

ConvergenceReport run_sweep(const ExperimentConfig& c, unsigned threads, bool kill) {
    const TwoLineDensity d0 = initial_density(c);
    const TwoLineDensity limit = limit_density(c, d0);

    ConvergenceReport report;
    report.mode = c.mode;
    report.initial_mass = total_mass(d0);
    const double mass_limit = kill ? surviving_mass(collapse_lines(d0), c.t_macro) : total_mass(limit);
    if (kill) report.analytic_survival = mass_limit;

    report.rows.resize(c.epsilons.size());
    const SolverConfig solver{c.cfl, Splitting::Strang, c.flip_intensity};
    parallel_for(c.epsilons.size(), threads, [&](std::size_t k) {
        const auto start = std::chrono::steady_clock::now();
        const double eps = c.epsilons[k];
        ConvergenceRow row;
        row.epsilon = eps;
        row.t = c.t_macro;

        const Evolution ev = evolve_G_epsilon(d0, c.params, eps, c.t_macro, solver);
        row.l1_error_pde = l1_distance(ev.density, limit);
        row.mass_solver = total_mass(ev.density);
        row.mass_limit = mass_limit;
        row.killed_fraction = ev.losses.killed / report.initial_mass;
        row.edge_leakage = ev.losses.edge_outflow;
        row.steps = ev.steps;

        row.l1_error_mc = std::numeric_limits<double>::quiet_NaN();
        row.mc_killed_fraction = std::numeric_limits<double>::quiet_NaN();
        row.mc_solver_l1 = std::numeric_limits<double>::quiet_NaN();
        row.mc_standard_error = std::numeric_limits<double>::quiet_NaN();
        if (c.mc.n_particles > 0) {
            const EnsembleResult mc = simulate_ensemble(d0, c.mc.n_particles, ScaledModel{eps, c.flip_intensity},
                                                        c.params, c.t_macro, c.mc.seed, d0.grid,
                                                        inner_threads(threads, c.epsilons.size()));
            // the histogram carries probability; rescale to the initial mass
            TwoLineDensity scaled = mc.density;
            for (double& v : scaled.plus) v *= report.initial_mass;
            for (double& v : scaled.minus) v *= report.initial_mass;
            row.l1_error_mc = l1_distance(scaled, limit);
            row.mc_killed_fraction = mc.killed_fraction;
            row.mc_solver_l1 = l1_distance(scaled, ev.density);
            row.mc_standard_error = report.initial_mass * mc.l1_sampling_error;
        }

        if (c.report_runtime) {
            row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        report.rows[k] = row;
    });

    report.monotone_decay = true;
    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        if (!(report.rows[k].l1_error_pde < report.rows[k - 1].l1_error_pde)) report.monotone_decay = false;
    }
    leakage_warnings(c, report);
    return report;
}

}  // namespace

TwoLineDensity initial_density(const ExperimentConfig& c) {
    const Grid g = make_grid(c);
    TwoLineDensity d(g);
    if (c.initial.kind == InitialKind::Gaussian) {
        d.line(c.initial.line) = gaussian_cells(g, c.initial.mean, c.initial.std).values;
    } else {
        const auto cell = g.cell_of(c.initial.x);
        if (!cell) throw ConfigError("initial.x lies outside the grid");
        d.line(c.initial.line)[*cell] = 1.0 / g.dx();
    }
    return d;
}

TwoLineDensity limit_density(const ExperimentConfig& c, const TwoLineDensity& d0) {
    const LineDensity collapsed = collapse_lines(project_P(d0));
    if (c.mode == Mode::KillLimit) return spread_lines(minimal_density_evolve(collapsed, c.t_macro));
    return spread_lines(skew_density_evolve(collapsed, c.t_macro, SkewParams::make(c.params.p, c.params.q)));
}

ConvergenceReport run_convergence_no_kill(const ExperimentConfig& config, unsigned threads) {
    if (config.mode != Mode::NoKillLimit) throw ConfigError("run_convergence_no_kill needs mode no_kill_limit");
    ExperimentConfig c = config;
    validate(c);
    return run_sweep(c, threads, false);
}

ConvergenceReport run_convergence_kill(const ExperimentConfig& config, unsigned threads) {
    if (config.mode != Mode::KillLimit) throw ConfigError("run_convergence_kill needs mode kill_limit");
    ExperimentConfig c = config;
    validate(c);
    return run_sweep(c, threads, true);
}

std::vector<Snapshot> run_simulation(const ExperimentConfig& config, unsigned threads) {
    ExperimentConfig c = config;
    validate(c);
    const TwoLineDensity d0 = initial_density(c);
    const double m0 = total_mass(d0);
    const SolverConfig solver{c.cfl, Splitting::Strang, c.flip_intensity};

    std::vector<Snapshot> out(c.epsilons.size(), Snapshot{0.0, d0, std::nullopt, 0.0, 0.0, 0.0});
    parallel_for(c.epsilons.size(), threads, [&](std::size_t k) {
        const double eps = c.epsilons[k];
        Snapshot s{eps, d0, std::nullopt, 0.0, 0.0, 0.0};
        const Evolution ev = evolve_G_epsilon(d0, c.params, eps, c.t_macro, solver);
        s.solver = ev.density;
        s.killed_solver = ev.losses.killed / m0;
        s.edge_leakage = ev.losses.edge_outflow;
        if (c.mc.n_particles > 0) {
            EnsembleResult mc = simulate_ensemble(d0, c.mc.n_particles, ScaledModel{eps, c.flip_intensity}, c.params,
                                                  c.t_macro, c.mc.seed, d0.grid, inner_threads(threads, c.epsilons.size()));
            for (double& v : mc.density.plus) v *= m0;
            for (double& v : mc.density.minus) v *= m0;
            s.mc = std::move(mc.density);
            s.killed_mc = mc.killed_fraction;
        }
        out[k] = std::move(s);
    });
    return out;
}

std::vector<KernelTableRow> kernel_table(const ExperimentConfig& c) {
    const SkewParams sp = SkewParams::make(c.params.p, c.params.q);
    std::vector<double> ys = c.kernel_table.y;
    if (ys.empty()) {
        for (int k = -40; k <= 40; ++k) ys.push_back(0.1 * k);
    }
    std::vector<KernelTableRow> rows;
    rows.reserve(c.kernel_table.times.size() * c.kernel_table.x.size() * ys.size());
    for (double t : c.kernel_table.times) {
        for (double x : c.kernel_table.x) {
            for (double y : ys) {
                rows.push_back({t, x, y, gamma_kernel(t, x, y, sp), x > 0.0 ? "plus" : "minus"});
            }
        }
    }
    return rows;
}

}  // namespace telegraph::harness
