#pragma once

#include <functional>

#include "telegraph/density.hpp"

namespace telegraph {

/// Weights of the transmission conditions p phi(0-) = q phi(0+), phi'(0+) = phi'(0-).
struct SkewParams {
    double p = 0.5;
    double q = 0.5;

    /// Throws ValidationError unless p, q >= 0 and p + q > 0.
    static SkewParams make(double p, double q);
    /// Skewness (p - q)/(p + q) in [-1, 1].
    [[nodiscard]] double theta() const { return (p - q) / (p + q); }
};

/// Transition density of skew Brownian motion started at x > 0.
[[nodiscard]] double gamma_plus(double t, double x, double y, const SkewParams& params);
/// Transition density of skew Brownian motion started at x < 0.
[[nodiscard]] double gamma_minus(double t, double x, double y, const SkewParams& params);
/// gamma_plus or gamma_minus according to the sign of x (x != 0).
[[nodiscard]] double gamma_kernel(double t, double x, double y, const SkewParams& params);

/// Density at time t of skew Brownian motion with initial density psi0.
/// Cell-to-cell transfer weights are integrated exactly for piecewise-constant input.
[[nodiscard]] LineDensity skew_density_evolve(const LineDensity& psi0, double t, const SkewParams& params);

/// Killed Brownian kernel on (0, inf): (2 pi t)^{-1/2}(e^{-(x-y)^2/2t} - e^{-(x+y)^2/2t}).
[[nodiscard]] double minimal_bm_kernel(double t, double x, double y);

/// Evolves psi0 by Brownian motion killed at 0, independently on each half-line.
[[nodiscard]] LineDensity minimal_density_evolve(const LineDensity& psi0, double t);

/// int psi0(x) erf(|x| / sqrt(2t)) dx for piecewise-constant psi0, in closed form:
/// the mass that survives killing at 0 up to time t.
[[nodiscard]] double surviving_mass(const LineDensity& psi0, double t);

/// Resolvent of the killed Brownian generator (1/2) f'' on [0, inf),
/// (2 lambda)^{-1/2} int_0^inf (e^{-k|x-y|} - e^{-k(x+y)}) f(y) dy with k = sqrt(2 lambda).
[[nodiscard]] double killed_resolvent_apply(const std::function<double(double)>& f, double lambda, double x);

}  // namespace telegraph
