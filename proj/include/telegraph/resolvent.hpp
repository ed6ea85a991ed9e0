#pragma once

#include <vector>

#include "telegraph/density.hpp"
#include "telegraph/params.hpp"

namespace telegraph {

/// Solution phi of lambda phi - A phi = psi for the interface transport
/// generator A phi(x, i) = -i phi'(x, i).
struct ResolventA {
    Grid grid;
    std::vector<double> plus;   ///< phi(x, +1) at cell centers
    std::vector<double> minus;  ///< phi(x, -1) at cell centers
    double c1 = 0.0;            ///< phi(0-, +1) = int_{-inf}^0 e^{lambda y} psi(y, +1) dy
    double c4 = 0.0;            ///< phi(0+, -1) = int_0^inf e^{-lambda y} psi(y, -1) dy
    double plus_left = 0.0;     ///< phi(0-, +1)
    double plus_right = 0.0;    ///< phi(0+, +1) = p c1 + q' c4
    double minus_left = 0.0;    ///< phi(0-, -1) = p' c1 + q c4
    double minus_right = 0.0;   ///< phi(0+, -1)

    explicit ResolventA(const Grid& g) : grid(g), plus(g.n_cells()), minus(g.n_cells()) {}
};

/// Evaluates the closed-form resolvent with psi taken piecewise constant on
/// the grid (zero outside it); every integral is then exact.
[[nodiscard]] ResolventA resolvent_A(const TwoLineDensity& psi, double lambda, const InterfaceParams& params);

}  // namespace telegraph
