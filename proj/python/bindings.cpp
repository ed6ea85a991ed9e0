#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "telegraph/density.hpp"
#include "telegraph/eigen.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/harness/config.hpp"
#include "telegraph/harness/experiments.hpp"
#include "telegraph/harness/report.hpp"
#include "telegraph/kinetic.hpp"
#include "telegraph/params.hpp"
#include "telegraph/philox.hpp"
#include "telegraph/skew_kernels.hpp"
#include "telegraph/transport.hpp"

namespace py = pybind11;
namespace tl = telegraph;
namespace th = telegraph::harness;

namespace {

tl::TwoLineDensity two_line(const tl::Grid& g, const std::vector<double>& plus, const std::vector<double>& minus) {
    if (plus.size() != g.n_cells() || minus.size() != g.n_cells()) {
        throw tl::ValidationError("line arrays must have grid.n_cells entries");
    }
    tl::TwoLineDensity d(g);
    d.plus = plus;
    d.minus = minus;
    return d;
}

py::dict convergence_dict(const th::ConvergenceReport& r) {
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict d;
        d["epsilon"] = row.epsilon;
        d["l1_error_pde"] = row.l1_error_pde;
        d["l1_error_mc"] = row.l1_error_mc;
        d["mass_solver"] = row.mass_solver;
        d["mass_limit"] = row.mass_limit;
        d["killed_fraction"] = row.killed_fraction;
        d["edge_leakage"] = row.edge_leakage;
        rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["monotone_decay"] = r.monotone_decay;
    out["warnings"] = r.warnings;
    if (r.analytic_survival) out["analytic_survival"] = *r.analytic_survival;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-line interface telegraph process and its diffusion limits";

    py::register_exception<tl::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<th::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<tl::InterfaceParams>(m, "InterfaceParams")
        .def(py::init(&tl::InterfaceParams::validate), py::arg("p"), py::arg("p_prime"), py::arg("q"),
             py::arg("q_prime"))
        .def_readonly("p", &tl::InterfaceParams::p)
        .def_readonly("p_prime", &tl::InterfaceParams::p_prime)
        .def_readonly("q", &tl::InterfaceParams::q)
        .def_readonly("q_prime", &tl::InterfaceParams::q_prime)
        .def_readonly("p0", &tl::InterfaceParams::p0)
        .def_readonly("q0", &tl::InterfaceParams::q0)
        .def_readonly("gamma_kill", &tl::InterfaceParams::gamma_kill)
        .def("conserves_mass", &tl::InterfaceParams::conserves_mass);

    py::class_<tl::SkewParams>(m, "SkewParams")
        .def(py::init(&tl::SkewParams::make), py::arg("p"), py::arg("q"))
        .def_readonly("p", &tl::SkewParams::p)
        .def_readonly("q", &tl::SkewParams::q)
        .def_property_readonly("theta", &tl::SkewParams::theta);

    py::class_<tl::Grid>(m, "Grid")
        .def(py::init<double, std::size_t>(), py::arg("half_width"), py::arg("n_cells"))
        .def_property_readonly("dx", &tl::Grid::dx)
        .def_property_readonly("n_cells", &tl::Grid::n_cells)
        .def("centers", [](const tl::Grid& g) {
            std::vector<double> c(g.n_cells());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.center(i);
            return c;
        });

    m.def("gamma_kernel", &tl::gamma_kernel, py::arg("t"), py::arg("x"), py::arg("y"), py::arg("params"));
    m.def("minimal_bm_kernel", &tl::minimal_bm_kernel, py::arg("t"), py::arg("x"), py::arg("y"));
    m.def("det_M", &tl::det_M, py::arg("eps"), py::arg("lam"), py::arg("params"));
    m.def(
        "eigen_weights",
        [](double eps, double lam) {
            const tl::EigenPair e = tl::kernel_eigenfunctions(eps, lam);
            return py::make_tuple(e.mu, e.w_plus, e.w_minus);
        },
        py::arg("eps"), py::arg("lam"), "(mu, w_plus, w_minus)");

    m.def(
        "gaussian_cells",
        [](const tl::Grid& g, double mean, double sd, double mass) { return tl::gaussian_cells(g, mean, sd, mass).values; },
        py::arg("grid"), py::arg("mean"), py::arg("sd"), py::arg("mass") = 1.0);

    m.def(
        "evolve",
        [](const tl::Grid& g, const std::vector<double>& plus, const std::vector<double>& minus,
           const tl::InterfaceParams& params, double eps, double t, double cfl) {
            const tl::TwoLineDensity d0 = two_line(g, plus, minus);
            const tl::Evolution ev = [&] {
                py::gil_scoped_release release;
                return tl::evolve_G_epsilon(d0, params, eps, t, tl::SolverConfig{cfl, tl::Splitting::Strang, 1.0});
            }();
            py::dict out;
            out["plus"] = ev.density.plus;
            out["minus"] = ev.density.minus;
            out["killed"] = ev.losses.killed;
            out["edge_outflow"] = ev.losses.edge_outflow;
            out["steps"] = ev.steps;
            return out;
        },
        py::arg("grid"), py::arg("plus"), py::arg("minus"), py::arg("params"), py::arg("eps"), py::arg("t"),
        py::arg("cfl") = 1.0);

    m.def(
        "simulate_particle",
        [](double x0, int line, double t, double eps, const tl::InterfaceParams& params, std::uint64_t seed,
           std::uint64_t particle) {
            tl::ParticleStream rng(seed, particle);
            const tl::ParticleOutcome o = tl::simulate_particle(x0, line, t, tl::ScaledModel{eps, 1.0}, params, rng);
            return py::make_tuple(o.killed, o.x, o.line);
        },
        py::arg("x0"), py::arg("line"), py::arg("t"), py::arg("eps"), py::arg("params"), py::arg("seed"),
        py::arg("particle") = 0, "(killed, x, line)");

    m.def(
        "run_convergence",
        [](const std::string& config_json, unsigned threads) {
            const th::ExperimentConfig c = th::parse_config_text(config_json);
            th::ConvergenceReport r;
            {
                py::gil_scoped_release release;
                r = c.mode == th::Mode::KillLimit ? th::run_convergence_kill(c, threads)
                                                  : th::run_convergence_no_kill(c, threads);
            }
            return convergence_dict(r);
        },
        py::arg("config_json"), py::arg("threads") = 1);

    m.def(
        "validate_kernels",
        [](const std::string& config_json) {
            const th::ExperimentConfig c = th::parse_config_text(config_json, th::Mode::KernelValidation);
            const th::ValidationReport r = th::run_kernel_validation(c);
            py::dict out;
            for (const auto& check : r.checks) out[py::str(check.name)] = py::make_tuple(check.measured, check.passed);
            return out;
        },
        py::arg("config_json"), "{check name: (measured, passed)}");

    m.attr("CONVERGENCE_HEADER") = std::string(th::kConvergenceHeader);
}
