#include "telegraph/resolvent.hpp"

#include <cmath>

#include "telegraph/errors.hpp"

namespace telegraph {

// With psi constant (= c) on a cell of width h, the exponentially weighted
// integral across the cell is c (1 - e^{-lambda h}) / lambda and the
// accumulated value decays by e^{-lambda h}. All four branches are
// one-directional sweeps of that recurrence.
ResolventA resolvent_A(const TwoLineDensity& psi, double lambda, const InterfaceParams& params) {
    if (!(lambda > 0.0)) throw ValidationError("resolvent parameter lambda must be positive");

    const Grid& g = psi.grid;
    const std::size_t n = g.n_cells();
    const std::size_t right0 = g.origin_cell();
    const double h = g.dx();
    const double decay = std::exp(-lambda * h);
    const double half_decay = std::exp(-0.5 * lambda * h);
    const double gain = -std::expm1(-lambda * h) / lambda;
    const double half_gain = -std::expm1(-0.5 * lambda * h) / lambda;

    ResolventA r(g);

    // phi(x, +1), x < 0: e^{-lambda x} int_{-inf}^x e^{lambda y} psi(y, 1) dy, sweep left to right.
    double acc = 0.0;  // value at the left edge of cell i
    for (std::size_t i = 0; i < right0; ++i) {
        r.plus[i] = half_decay * acc + half_gain * psi.plus[i];
        acc = decay * acc + gain * psi.plus[i];
    }
    r.c1 = acc;

    // phi(x, -1), x > 0: e^{lambda x} int_x^inf e^{-lambda y} psi(y, -1) dy, sweep right to left.
    acc = 0.0;
    for (std::size_t i = n; i-- > right0;) {
        r.minus[i] = half_decay * acc + half_gain * psi.minus[i];
        acc = decay * acc + gain * psi.minus[i];
    }
    r.c4 = acc;

    r.plus_left = r.c1;
    r.minus_right = r.c4;
    r.plus_right = params.p * r.c1 + params.q_prime * r.c4;
    r.minus_left = params.p_prime * r.c1 + params.q * r.c4;

    // phi(x, +1), x > 0: (p C1 + q' C4) e^{-lambda x} + int_0^x e^{-lambda (x-y)} psi(y, 1) dy.
    acc = r.plus_right;
    for (std::size_t i = right0; i < n; ++i) {
        r.plus[i] = half_decay * acc + half_gain * psi.plus[i];
        acc = decay * acc + gain * psi.plus[i];
    }

    // phi(x, -1), x < 0: (p' C1 + q C4) e^{lambda x} + int_x^0 e^{lambda (x-y)} psi(y, -1) dy.
    acc = r.minus_left;
    for (std::size_t i = right0; i-- > 0;) {
        r.minus[i] = half_decay * acc + half_gain * psi.minus[i];
        acc = decay * acc + gain * psi.minus[i];
    }
    return r;
}

}  // namespace telegraph
