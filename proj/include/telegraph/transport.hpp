#pragma once

#include <cstddef>

#include "telegraph/density.hpp"
#include "telegraph/params.hpp"

namespace telegraph {

enum class Splitting { Lie, Strang };

struct SolverConfig {
    /// Courant number (dt / eps) / dx of the transport substep, in (0, 1].
    /// At 1 the upwind step is an exact one-cell shift.
    double cfl = 1.0;
    Splitting splitting = Splitting::Strang;
    double flip_intensity = 1.0;
};

/// Mass removed from the domain during transport.
struct TransportLosses {
    double edge_outflow = 0.0;  ///< left through x = -L or x = +L
    double killed = 0.0;        ///< destroyed at the interface (p0, q0 shares)
};

/// One first-order upwind step of the transport part (1/eps) A over dt.
///
/// Line +1 moves right and line -1 moves left at speed 1/eps. The fluxes
/// reaching x = 0 from the left on line +1 (F_L) and from the right on
/// line -1 (F_R) are redistributed: p F_L + q' F_R enters line +1 on the
/// right, p' F_L + q F_R enters line -1 on the left, and p0 F_L + q0 F_R
/// is destroyed. Throws CflError when dt / (eps dx) > 1.
void advance_transport_inplace(TwoLineDensity& d, const InterfaceParams& params, double eps, double dt,
                               TransportLosses* losses = nullptr);
[[nodiscard]] TwoLineDensity advance_transport(const TwoLineDensity& d, const InterfaceParams& params, double eps,
                                               double dt, TransportLosses* losses = nullptr);

struct Evolution {
    TwoLineDensity density;
    TransportLosses losses;
    std::size_t steps = 0;
    double dt = 0.0;
};

/// Approximates e^{t G_eps} d0 with G_eps = (1/eps) A + (flip_intensity/eps^2)(B - I)
/// by splitting exact flips against upwind transport. Uses ceil(t / (cfl eps dx))
/// equal steps.
[[nodiscard]] Evolution evolve_G_epsilon(const TwoLineDensity& d0, const InterfaceParams& params, double eps,
                                         double t_macro, const SolverConfig& config = {});

}  // namespace telegraph
