#include "telegraph/transport.hpp"

#include <cmath>
#include <string>

#include "telegraph/errors.hpp"

namespace telegraph {

void advance_transport_inplace(TwoLineDensity& d, const InterfaceParams& params, double eps, double dt,
                               TransportLosses* losses) {
    if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
    if (!(dt >= 0.0)) throw ValidationError("time step must be non-negative");
    const double nu = dt / (eps * d.grid.dx());
    if (nu > 1.0 + 1e-12) {
        throw CflError("CFL violated: dt/(eps dx) = " + std::to_string(nu) + " > 1");
    }
    const double keep = 1.0 - nu;
    const std::size_t n = d.grid.n_cells();
    const std::size_t right0 = d.grid.origin_cell();
    const std::size_t left0 = right0 - 1;

    auto& u = d.plus;
    auto& v = d.minus;

    // Outgoing upwind fluxes (density units; multiply by dx for mass).
    const double flux_left = nu * u[left0];   // line +1 arriving at 0 from the left
    const double flux_right = nu * v[right0]; // line -1 arriving at 0 from the right
    const double out_right_edge = nu * u[n - 1];
    const double out_left_edge = nu * v[0];

    // Line +1: sweep right-to-left so u[i-1] is still the old value.
    for (std::size_t i = n - 1; i > 0; --i) {
        if (i == right0) continue;
        u[i] = keep * u[i] + nu * u[i - 1];
    }
    u[0] = keep * u[0];
    u[right0] = keep * u[right0] + params.p * flux_left + params.q_prime * flux_right;

    // Line -1: sweep left-to-right so v[i+1] is still the old value.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (i == left0) continue;
        v[i] = keep * v[i] + nu * v[i + 1];
    }
    v[n - 1] = keep * v[n - 1];
    v[left0] = keep * v[left0] + params.p_prime * flux_left + params.q * flux_right;

    if (losses) {
        const double dx = d.grid.dx();
        losses->edge_outflow += dx * (out_right_edge + out_left_edge);
        losses->killed += dx * (params.p0 * flux_left + params.q0 * flux_right);
    }
}

TwoLineDensity advance_transport(const TwoLineDensity& d, const InterfaceParams& params, double eps, double dt,
                                 TransportLosses* losses) {
    TwoLineDensity out = d;
    advance_transport_inplace(out, params, eps, dt, losses);
    return out;
}

Evolution evolve_G_epsilon(const TwoLineDensity& d0, const InterfaceParams& params, double eps, double t_macro,
                           const SolverConfig& config) {
    if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
    if (!(t_macro >= 0.0)) throw ValidationError("evolution time must be non-negative");
    if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ValidationError("cfl must lie in (0, 1]");
    if (!(config.flip_intensity > 0.0)) throw ValidationError("flip intensity must be positive");

    Evolution ev{d0, {}, 0, 0.0};
    if (t_macro == 0.0) return ev;

    const double dt_max = config.cfl * eps * d0.grid.dx();
    // The small slack keeps t/dt_max = 5120.0000000001 from adding a step.
    const auto steps = static_cast<std::size_t>(std::ceil(t_macro / dt_max - 1e-9));
    ev.steps = steps == 0 ? 1 : steps;
    ev.dt = t_macro / static_cast<double>(ev.steps);
    const double flip_span = config.flip_intensity * ev.dt / (eps * eps);

    TwoLineDensity& d = ev.density;
    if (config.splitting == Splitting::Lie) {
        for (std::size_t k = 0; k < ev.steps; ++k) {
            advance_transport_inplace(d, params, eps, ev.dt, &ev.losses);
            flip_exact_inplace(d, flip_span);
        }
        return ev;
    }

    // Strang: half flips between consecutive steps are fused into full ones.
    flip_exact_inplace(d, 0.5 * flip_span);
    for (std::size_t k = 0; k < ev.steps; ++k) {
        advance_transport_inplace(d, params, eps, ev.dt, &ev.losses);
        flip_exact_inplace(d, k + 1 == ev.steps ? 0.5 * flip_span : flip_span);
    }
    return ev;
}

}  // namespace telegraph
