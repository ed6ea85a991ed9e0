#pragma once

#include "telegraph/params.hpp"

namespace telegraph {

/// Basis of the kernel of lambda - G_eps when the interface conditions are
/// dropped. phi_minus lives on x < 0 and phi_plus on x > 0:
///   phi_minus(x, i) = e^{mu x}  * (1 if i = +1, w_plus  if i = -1),
///   phi_plus(x, i)  = e^{-mu x} * (1 if i = +1, w_minus if i = -1).
struct EigenPair {
    double epsilon = 0.0;
    double lambda = 0.0;
    double mu = 0.0;       ///< sqrt(lambda (lambda eps^2 + 2))
    double w_plus = 0.0;   ///< lambda eps^2 + mu eps + 1
    double w_minus = 0.0;  ///< lambda eps^2 - mu eps + 1

    [[nodiscard]] double phi_minus(double x, int line) const;
    [[nodiscard]] double phi_plus(double x, int line) const;
    [[nodiscard]] double d_phi_minus(double x, int line) const;
    [[nodiscard]] double d_phi_plus(double x, int line) const;
};

[[nodiscard]] EigenPair kernel_eigenfunctions(double eps, double lambda);

/// Determinant of the 2x2 map from kernel coefficients to interface defects,
/// general closed form (reduces to -2 lambda eps^2 - eps (p+q)(mu - lambda eps)
/// without killing). Tends to -gamma_kill as eps -> 0.
[[nodiscard]] double det_M(double eps, double lambda, const InterfaceParams& params);

}  // namespace telegraph
