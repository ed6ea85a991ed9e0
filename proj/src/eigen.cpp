#include "telegraph/eigen.hpp"

#include <cmath>

#include "telegraph/errors.hpp"

namespace telegraph {

EigenPair kernel_eigenfunctions(double eps, double lambda) {
    if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
    if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
    EigenPair e;
    e.epsilon = eps;
    e.lambda = lambda;
    e.mu = std::sqrt(lambda * (lambda * eps * eps + 2.0));
    e.w_plus = lambda * eps * eps + e.mu * eps + 1.0;
    e.w_minus = lambda * eps * eps - e.mu * eps + 1.0;
    return e;
}

double EigenPair::phi_minus(double x, int line) const {
    if (x >= 0.0) return 0.0;
    return std::exp(mu * x) * (line > 0 ? 1.0 : w_plus);
}

double EigenPair::phi_plus(double x, int line) const {
    if (x <= 0.0) return 0.0;
    return std::exp(-mu * x) * (line > 0 ? 1.0 : w_minus);
}

double EigenPair::d_phi_minus(double x, int line) const { return mu * phi_minus(x, line); }

double EigenPair::d_phi_plus(double x, int line) const { return -mu * phi_plus(x, line); }

double det_M(double eps, double lambda, const InterfaceParams& params) {
    const EigenPair e = kernel_eigenfunctions(eps, lambda);
    const double p = params.p;
    const double q = params.q;
    const double p0 = params.p0;
    const double q0 = params.q0;
    return -2.0 * lambda * eps * eps - (p + q) * eps * (e.mu - lambda * eps) +
           (q0 * (1.0 - p) + p0 * (1.0 - q) - p0 * q0) * e.w_minus - p0 - q0;
}

}  // namespace telegraph
