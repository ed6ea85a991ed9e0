#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace telegraph::quad {

/// Adaptive 31-point Gauss-Kronrod on [a, b].
///
/// Integrates in the reference variable u in [-1, 1]. Boost compares the
/// unscaled panel error against a width-scaled tolerance, so short
/// intervals would otherwise refine to max depth.
template <class F>
double adaptive(F&& f, double a, double b, double rel_tol = 1e-13, unsigned max_depth = 15) {
    if (a == b) return 0.0;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto g = [&](double u) { return half * f(mid + half * u); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, max_depth, rel_tol);
}

/// Composite 20-point Gauss-Legendre with `panels` equal panels on [a, b].
template <class F>
double composite_gauss(F&& f, double a, double b, int panels) {
    if (a == b) return 0.0;
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + k * h, a + (k + 1) * h);
    }
    return sum;
}

}  // namespace telegraph::quad
