#pragma once

namespace telegraph {

/// Interface probabilities of the two-line telegraph process.
///
/// A particle arriving at x = 0 from the left (on line +1) is transmitted
/// with probability p, reflected onto line -1 with probability p_prime and
/// killed with probability p0. Arrivals from the right (on line -1) use
/// q, q_prime and q0 in the same roles.
struct InterfaceParams {
    double p = 1.0;
    double p_prime = 0.0;
    double q = 1.0;
    double q_prime = 0.0;
    double p0 = 0.0;
    double q0 = 0.0;
    /// p*q0 + q*p0 + p0*q0; positive exactly when killing survives the
    /// diffusive limit.
    double gamma_kill = 0.0;

    /// Validates the four raw probabilities and fills in the derived ones.
    /// Sums within 1e-12 of one are accepted and p0/q0 are then clamped to 0.
    static InterfaceParams validate(double p, double p_prime, double q, double q_prime);

    [[nodiscard]] bool conserves_mass() const { return p0 == 0.0 && q0 == 0.0; }
};

/// Tolerance used for the sum constraints p + p' <= 1 and q + q' <= 1.
inline constexpr double kProbabilityTolerance = 1e-12;

}  // namespace telegraph
