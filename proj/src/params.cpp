#include "telegraph/params.hpp"

#include <cmath>
#include <string>

#include "telegraph/errors.hpp"

namespace telegraph {

namespace {

void require_probability(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0,1], got " + std::to_string(value));
    }
}

double residual_probability(double a, double b) {
    const double r = 1.0 - a - b;
    return std::abs(r) <= kProbabilityTolerance ? 0.0 : r;
}

}  // namespace

InterfaceParams InterfaceParams::validate(double p, double p_prime, double q, double q_prime) {
    require_probability(p, "p");
    require_probability(p_prime, "p'");
    require_probability(q, "q");
    require_probability(q_prime, "q'");
    if (p + p_prime > 1.0 + kProbabilityTolerance) {
        throw ValidationError("constraint violated: p+p'>1 (p=" + std::to_string(p) +
                              ", p'=" + std::to_string(p_prime) + ")");
    }
    if (q + q_prime > 1.0 + kProbabilityTolerance) {
        throw ValidationError("constraint violated: q+q'>1 (q=" + std::to_string(q) +
                              ", q'=" + std::to_string(q_prime) + ")");
    }

    InterfaceParams out;
    out.p = p;
    out.p_prime = p_prime;
    out.q = q;
    out.q_prime = q_prime;
    out.p0 = residual_probability(p, p_prime);
    out.q0 = residual_probability(q, q_prime);
    out.gamma_kill = p * out.q0 + q * out.p0 + out.p0 * out.q0;
    return out;
}

}  // namespace telegraph
