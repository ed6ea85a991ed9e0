#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "telegraph/harness/config.hpp"
#include "telegraph/harness/experiments.hpp"
#include "telegraph/harness/report.hpp"

using namespace telegraph;
using namespace telegraph::harness;

namespace {

std::string error_of(std::string_view text, std::optional<Mode> mode = std::nullopt) {
    try {
        (void)parse_config_text(text, mode);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

const char* kSmallNoKill = R"({
  "mode": "no_kill_limit",
  "params": {"p": 0.7, "p_prime": 0.3, "q": 0.3, "q_prime": 0.7},
  "epsilons": [0.4, 0.2, 0.1],
  "grid": {"half_width": 6.0, "n_cells": 480},
  "mc": {"n_particles": 2000, "seed": 7}
})";

}  // namespace

TEST_CASE("config round trip") {
    const ExperimentConfig c = parse_config_text(kSmallNoKill);
    CHECK(c.mode == Mode::NoKillLimit);
    CHECK(c.params.p == 0.7);
    CHECK(c.params.p0 == 0.0);
    CHECK(c.epsilons == std::vector<double>{0.4, 0.2, 0.1});
    CHECK(c.grid.n_cells == 480);
    CHECK(c.mc.seed == 7);
    const ExperimentConfig again = parse_config_json(to_json(c));
    CHECK(to_json(again) == to_json(c));
}

TEST_CASE("unknown keys get a suggestion") {
    const std::string msg =
        error_of(R"({"mode":"no_kill_limit","params":{"p":1,"p_prime":0,"q":1,"q_prime":0},"epsilon":[0.1]})");
    CHECK(contains(msg, "unknown key 'epsilon'"));
    CHECK(contains(msg, "did you mean 'epsilons'"));
    const std::string nested =
        error_of(R"({"mode":"no_kill_limit","params":{"p":1,"p_prime":0,"q":1,"q_prim":0}})");
    CHECK(contains(nested, "'q_prime'"));
    CHECK(suggest_key("zzzzzz", {"epsilons", "grid"}) == std::nullopt);
}

TEST_CASE("config validation") {
    const char* base = R"({"mode":"no_kill_limit","params":{"p":0.5,"p_prime":0.5,"q":0.5,"q_prime":0.5},)";
    CHECK(contains(error_of(std::string(base) + R"("epsilons":[0.1,0.2]})"), "strictly decreasing"));
    CHECK(contains(error_of(std::string(base) + R"("epsilons":[0.1,0.1]})"), "strictly decreasing"));
    CHECK(contains(error_of(std::string(base) + R"("epsilons":[0.2,-0.1]})"), "positive"));
    CHECK(contains(error_of(std::string(base) + R"("grid":{"n_cells":101}})"), "even"));
    CHECK(contains(error_of(std::string(base) + R"("cfl":1.5})"), "cfl"));
    CHECK(contains(error_of(std::string(base) + R"("initial":{"kind":"point","x":0}})"), "interface"));
    CHECK(contains(error_of("{not json"), "malformed JSON"));
    CHECK(contains(error_of(std::string(base) + "\"epsilons\":[0.1]}", Mode::KillLimit), "does not match"));
    CHECK(contains(error_of(R"({"mode":"no_kill_limit","params":{"p":0.6,"p_prime":0.6,"q":0.5,"q_prime":0.5}})"),
                   "p+p'>1"));
}

TEST_CASE("kill-limit hypothesis") {
    auto kill = [](double p, double pp, double q, double qp) {
        std::ostringstream os;
        os << R"({"mode":"kill_limit","params":{"p":)" << p << R"(,"p_prime":)" << pp << R"(,"q":)" << q
           << R"(,"q_prime":)" << qp << "}}";
        return os.str();
    };
    CHECK(contains(error_of(kill(0.5, 0.5, 0.5, 0.5)), "converge-nokill"));
    const std::string left = error_of(kill(0.0, 1.0, 0.3, 0.3));
    CHECK(contains(left, "reflected"));
    CHECK(contains(left, "not a good approximation"));
    CHECK(contains(error_of(kill(0.3, 0.3, 0.0, 1.0)), "right is reflected"));
    // p0 = 0 but p > 0: killing on the right side is reachable
    const ExperimentConfig ok = parse_config_text(kill(0.4, 0.6, 0.2, 0.3));
    CHECK(ok.params.gamma_kill == doctest::Approx(0.4 * 0.5));
    // the no-kill sweep refuses killing
    CHECK(contains(error_of(R"({"mode":"no_kill_limit","params":{"p":0.4,"p_prime":0.3,"q":0.5,"q_prime":0.5}})"),
                   "p0"));
}

TEST_CASE("convergence CSV") {
    const ExperimentConfig c = parse_config_text(kSmallNoKill);
    const ConvergenceReport one = run_convergence_no_kill(c, 1);
    const ConvergenceReport many = run_convergence_no_kill(c, 4);
    std::ostringstream a, b;
    write_convergence_csv(one, a);
    write_convergence_csv(many, b);
    CHECK(a.str() == b.str());
    const std::string header = a.str().substr(0, a.str().find('\n'));
    CHECK(header == "epsilon,t,l1_error_pde,l1_error_mc,mass_solver,mass_limit,killed_fraction,edge_leakage,runtime_s");
    REQUIRE(one.rows.size() == 3);
    for (const auto& r : one.rows) {
        CHECK(r.killed_fraction == 0.0);
        CHECK(r.runtime_s == 0.0);
        CHECK(std::isfinite(r.l1_error_mc));
    }
    CHECK(one.monotone_decay);
    CHECK(one.passed());
    CHECK_FALSE(one.analytic_survival.has_value());
}

TEST_CASE("no Monte Carlo writes nan") {
    ExperimentConfig c = parse_config_text(kSmallNoKill);
    c.mc.n_particles = 0;
    c.epsilons = {0.2};
    std::ostringstream out;
    write_convergence_csv(run_convergence_no_kill(c), out);
    const std::string line = out.str().substr(out.str().find('\n') + 1);
    CHECK(line.rfind("0.2,1,", 0) == 0);
    CHECK(contains(line, ",nan,"));
}

TEST_CASE("total killing reduces to minimal Brownian motion") {
    const ExperimentConfig c = parse_config_text(R"({
      "mode": "kill_limit",
      "params": {"p": 0, "p_prime": 0, "q": 0, "q_prime": 0},
      "epsilons": [0.2, 0.1, 0.05],
      "grid": {"half_width": 8.0, "n_cells": 400},
      "initial": {"kind": "point", "x": 0.5, "line": 1}
    })");
    const ConvergenceReport r = run_convergence_kill(c);
    REQUIRE(r.analytic_survival.has_value());
    CHECK(*r.analytic_survival == doctest::Approx(std::erf(0.5 / std::numbers::sqrt2)).epsilon(1e-3));
    for (const auto& row : r.rows) {
        CHECK(row.killed_fraction > 0.0);
        CHECK(row.mass_solver + row.killed_fraction + row.edge_leakage == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::abs(r.rows.back().mass_solver - *r.analytic_survival) <
          std::abs(r.rows.front().mass_solver - *r.analytic_survival));
}

TEST_CASE("kernel table") {
    ExperimentConfig c = parse_config_text(R"({"mode":"kernel_table","params":{"p":0.7,"p_prime":0.3,"q":0.3,"q_prime":0.7}})");
    const auto rows = kernel_table(c);
    CHECK(rows.size() == 3 * 4 * 81);
    CHECK(rows.front().side == "minus");
    CHECK(rows.back().side == "plus");
    std::ostringstream out;
    write_kernel_table_csv(rows, out);
    CHECK(out.str().rfind("t,x,y,gamma_value,side\n", 0) == 0);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(std::stod(format_number(0.6355079631)) == 0.6355079631);
}
