#include "telegraph/skew_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "telegraph/errors.hpp"
#include "telegraph/quadrature.hpp"

namespace telegraph {

SkewParams SkewParams::make(double p, double q) {
    if (!(p >= 0.0) || !(q >= 0.0)) throw ValidationError("skew weights p, q must be non-negative");
    if (!(p + q > 0.0)) throw ValidationError("skew weights need p+q>0");
    return {p, q};
}

namespace {

void check_time(double t) {
    if (!(t > 0.0)) throw ValidationError("kernel time must be positive");
}

void check_weights(const SkewParams& params) { (void)SkewParams::make(params.p, params.q); }

double heat(double t, double z) {
    return std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

/// Exact cell-to-cell Gaussian transfer weights.
///
/// weight(k) = int_{cell 0} int_{cell k} N(0,t)(y - x) dy dx for cell offset k,
/// from the second difference of F(z) = z Phi(z/s) + s phi(z/s), F'' = phi_s.
/// Using F(z) = z + F(-z), every evaluation is moved to z <= 0 where F is a
/// small positive tail, so no large terms cancel.
class CellTransfer {
public:
    CellTransfer(std::size_t n_cells, double h, double t) : n_(static_cast<long>(n_cells)), table_(2 * n_cells + 1) {
        const double s = std::sqrt(t);
        auto tail = [s](double z) {  // F(-z) for z >= 0
            return s * std::exp(-z * z / (2.0 * s * s)) / std::sqrt(2.0 * std::numbers::pi) -
                   z * 0.5 * std::erfc(z / (s * std::numbers::sqrt2));
        };
        table_[static_cast<std::size_t>(n_)] = std::max(0.0, h + 2.0 * tail(h) - 2.0 * tail(0.0));
        for (long k = 1; k <= n_; ++k) {
            const double w = tail((k + 1) * h) - 2.0 * tail(k * h) + tail((k - 1) * h);
            table_[static_cast<std::size_t>(n_ + k)] = std::max(0.0, w);
            table_[static_cast<std::size_t>(n_ - k)] = std::max(0.0, w);
        }
    }

    [[nodiscard]] double operator()(long k) const {
        if (k < -n_ || k > n_) return 0.0;
        return table_[static_cast<std::size_t>(k + n_)];
    }

private:
    long n_;
    std::vector<double> table_;
};

/// rho_j = (1/h) sum_i psi_i W(i, j) with W supplied by the caller.
template <class Weight>
LineDensity apply_transfer(const LineDensity& psi0, Weight&& weight) {
    const std::size_t n = psi0.grid.n_cells();
    const double inv_h = 1.0 / psi0.grid.dx();
    LineDensity out(psi0.grid);
    for (std::size_t i = 0; i < n; ++i) {
        const double src = psi0.values[i];
        if (src == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) out.values[j] += src * weight(static_cast<long>(i), static_cast<long>(j));
    }
    for (double& v : out.values) v *= inv_h;
    return out;
}

}  // namespace

double gamma_plus(double t, double x, double y, const SkewParams& params) {
    check_time(t);
    check_weights(params);
    if (!(x > 0.0)) throw ValidationError("gamma_plus needs a start point x > 0");
    if (y >= 0.0) return heat(t, y - x) + params.theta() * heat(t, y + x);
    return 2.0 * params.q / (params.p + params.q) * heat(t, y - x);
}

double gamma_minus(double t, double x, double y, const SkewParams& params) {
    check_time(t);
    check_weights(params);
    if (!(x < 0.0)) throw ValidationError("gamma_minus needs a start point x < 0");
    if (y <= 0.0) return heat(t, y - x) - params.theta() * heat(t, y + x);
    return 2.0 * params.p / (params.p + params.q) * heat(t, y - x);
}

double gamma_kernel(double t, double x, double y, const SkewParams& params) {
    if (x > 0.0) return gamma_plus(t, x, y, params);
    if (x < 0.0) return gamma_minus(t, x, y, params);
    throw ValidationError("skew kernel is undefined for a start exactly at 0");
}

LineDensity skew_density_evolve(const LineDensity& psi0, double t, const SkewParams& params) {
    check_weights(params);
    if (!(t >= 0.0)) throw ValidationError("evolution time must be non-negative");
    if (t == 0.0) return psi0;

    const Grid& g = psi0.grid;
    const long n = static_cast<long>(g.n_cells());
    const long half = n / 2;
    const CellTransfer transfer(g.n_cells(), g.dx(), t);
    const double theta = params.theta();

    return apply_transfer(psi0, [&](long i, long j) {
        const long direct = j - i;
        const long image = i + j - n + 1;
        const bool from_right = i >= half;
        const bool to_right = j >= half;
        if (from_right && to_right) return transfer(direct) + theta * transfer(image);
        if (from_right) return (1.0 - theta) * transfer(direct);
        if (!to_right) return std::max(0.0, transfer(direct) - theta * transfer(image));
        return (1.0 + theta) * transfer(direct);
    });
}

double minimal_bm_kernel(double t, double x, double y) {
    check_time(t);
    if (!(x > 0.0) || !(y >= 0.0)) throw ValidationError("minimal kernel needs x > 0 and y >= 0");
    // e^{-(x-y)^2/2t} - e^{-(x+y)^2/2t} = e^{-(x-y)^2/2t} (1 - e^{-2xy/t})
    return -heat(t, x - y) * std::expm1(-2.0 * x * y / t);
}

LineDensity minimal_density_evolve(const LineDensity& psi0, double t) {
    if (!(t >= 0.0)) throw ValidationError("evolution time must be non-negative");
    if (t == 0.0) return psi0;

    const Grid& g = psi0.grid;
    const long n = static_cast<long>(g.n_cells());
    const long half = n / 2;
    const CellTransfer transfer(g.n_cells(), g.dx(), t);

    return apply_transfer(psi0, [&](long i, long j) {
        if ((i >= half) != (j >= half)) return 0.0;
        return std::max(0.0, transfer(j - i) - transfer(i + j - n + 1));
    });
}

double surviving_mass(const LineDensity& psi0, double t) {
    if (!(t >= 0.0)) throw ValidationError("time must be non-negative");
    const Grid& g = psi0.grid;
    double mass = 0.0;
    for (double v : psi0.values) mass += v * g.dx();
    if (t == 0.0) return mass;

    // Antiderivative of erfc(x/a) on x >= 0: x erfc(x/a) - (a/sqrt(pi)) e^{-x^2/a^2}.
    const double a = std::sqrt(2.0 * t);
    auto anti = [a](double x) {
        return x * std::erfc(x / a) - a / std::sqrt(std::numbers::pi) * std::exp(-x * x / (a * a));
    };
    double lost = 0.0;
    for (std::size_t i = 0; i < g.n_cells(); ++i) {
        const double lo = g.left_edge(i);
        const double hi = lo + g.dx();
        const double u = std::min(std::abs(lo), std::abs(hi));
        const double w = std::max(std::abs(lo), std::abs(hi));
        lost += psi0.values[i] * (anti(w) - anti(u));
    }
    return mass - lost;
}

double killed_resolvent_apply(const std::function<double(double)>& f, double lambda, double x) {
    if (!(lambda > 0.0)) throw ValidationError("resolvent parameter lambda must be positive");
    if (!(x >= 0.0)) throw ValidationError("killed resolvent is defined on [0, inf)");
    if (x == 0.0) return 0.0;

    const double k = std::sqrt(2.0 * lambda);
    const double reach = 40.0 / k;
    // y < x: e^{-k(x-y)} (1 - e^{-2ky});  y > x: e^{-k(y-x)} (1 - e^{-2kx}).
    const double inner = quad::adaptive(
        [&](double y) { return -std::exp(-k * (x - y)) * std::expm1(-2.0 * k * y) * f(y); },
        std::max(0.0, x - reach), x);
    const double outer_factor = -std::expm1(-2.0 * k * x);
    const double outer =
        quad::adaptive([&](double y) { return std::exp(-k * (y - x)) * f(y); }, x, x + reach);
    return (inner + outer_factor * outer) / k;
}

}  // namespace telegraph
