#include "telegraph/cosine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "telegraph/errors.hpp"
#include "telegraph/quadrature.hpp"

namespace telegraph {

double ObservableFunction::sup_norm() const {
    double m = std::max(std::abs(at_minus_inf), std::abs(at_plus_inf));
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

std::size_t commensurate_shift(const Grid& grid, double t) {
    const double span = std::abs(t);
    const double cells = span / grid.dx();
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
        throw ValidationError("cosine time " + std::to_string(t) + " is not a multiple of dx = " +
                              std::to_string(grid.dx()));
    }
    return static_cast<std::size_t>(rounded);
}

double dual_cosine_bound(const SkewParams& params) {
    return 2.0 * std::max(params.p, params.q) / (params.p + params.q);
}

// Index bookkeeping shared by both families. With t = m dx and cell centers
// x_i = (i - n/2 + 1/2) dx, the points x +- t, -x - t and t - x are again
// centers, with indices i +- m, n-1-i-m and n-1-i+m.

LineDensity cosine_apply(const LineDensity& phi, double t, const SkewParams& params) {
    (void)SkewParams::make(params.p, params.q);
    const long m = static_cast<long>(commensurate_shift(phi.grid, t));
    const long n = static_cast<long>(phi.grid.n_cells());
    const long half = n / 2;
    auto at = [&](long k) { return (k < 0 || k >= n) ? 0.0 : phi.values[static_cast<std::size_t>(k)]; };
    const double right_coef = (params.p - params.q) / (2.0 * (params.p + params.q));
    const double left_coef = -right_coef;

    LineDensity out(phi.grid);
    for (long i = 0; i < n; ++i) {
        double v = 0.5 * (at(i + m) + at(i - m));
        if (i >= half - m && i < half) {
            v += left_coef * (at(n - 1 - i - m) + at(i + m));
        } else if (i >= half && i < half + m) {
            v += right_coef * (at(n - 1 - i + m) + at(i - m));
        }
        out.values[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

ObservableFunction dual_cosine_apply(const ObservableFunction& f, double t, const SkewParams& params) {
    (void)SkewParams::make(params.p, params.q);
    const long m = static_cast<long>(commensurate_shift(f.grid, t));
    const long n = static_cast<long>(f.grid.n_cells());
    const long half = n / 2;
    const double right_coef = (params.p - params.q) / (2.0 * (params.p + params.q));
    const double left_coef = -right_coef;

    ObservableFunction out(f.grid);
    out.at_minus_inf = f.at_minus_inf;
    out.at_plus_inf = f.at_plus_inf;
    for (long i = 0; i < n; ++i) {
        double v = 0.5 * (f.at(i + m) + f.at(i - m));
        if (i >= half - m && i < half) {
            v += left_coef * (f.at(n - 1 - i - m) - f.at(i + m));
        } else if (i >= half && i < half + m) {
            v += right_coef * (f.at(n - 1 - i + m) - f.at(i - m));
        }
        out.values[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

double dual_cosine_value(const std::function<double(double)>& f, double t, double x, const SkewParams& params) {
    t = std::abs(t);
    const double base = 0.5 * (f(x + t) + f(x - t));
    if (std::abs(x) >= t) return base;
    const double coef = (params.p - params.q) / (2.0 * (params.p + params.q));
    if (x <= 0.0) return base - coef * (f(-x - t) - f(x + t));
    return base + coef * (f(t - x) - f(x - t));
}

DualResolvent::DualResolvent(std::function<double(double)> g, double g_minus_inf, double g_plus_inf,
                             double lambda, const SkewParams& params)
    : g_(std::move(g)), g_minus_inf_(g_minus_inf), g_plus_inf_(g_plus_inf), lambda_(lambda) {
    if (!(lambda > 0.0)) throw ValidationError("resolvent parameter lambda must be positive");
    (void)SkewParams::make(params.p, params.q);
    // e^{-lambda * reach} ~ 4e-18: the kernel is negligible past this distance.
    reach_ = 40.0 / lambda;

    const double l = lambda;
    const double left = quad::adaptive([&](double y) { return std::exp(l * y) * (g_(y) - g_minus_inf_); },
                                       -reach_, 0.0);
    const double right = quad::adaptive([&](double y) { return std::exp(-l * y) * (g_(y) - g_plus_inf_); },
                                        0.0, reach_);
    coeffs_.c_minus = (left + g_minus_inf_ / l) / (2.0 * l);
    coeffs_.c_plus = (right + g_plus_inf_ / l) / (2.0 * l);

    const double s = params.p + params.q;
    coeffs_.d_minus = 2.0 * params.p / s * coeffs_.c_plus + (params.q - params.p) / s * coeffs_.c_minus;
    coeffs_.d_plus = (params.p - params.q) / s * coeffs_.c_plus + 2.0 * params.q / s * coeffs_.c_minus;
}

double DualResolvent::operator()(double x) const {
    // f(x) = D e^{-lambda |x|} + (1/2 lambda) int_{same half-line} e^{-lambda |x - y|} g(y) dy,
    // with g split into its limit on that side plus a decaying remainder.
    const double l = lambda_;
    const double ax = std::abs(x);
    const bool right = x >= 0.0;
    const double limit = right ? g_plus_inf_ : g_minus_inf_;
    const double d = right ? coeffs_.d_plus : coeffs_.d_minus;
    auto rest = [&](double y_abs) { return g_(right ? y_abs : -y_abs) - limit; };

    const double near = quad::adaptive([&](double y) { return std::exp(-l * (ax - y)) * rest(y); },
                                       std::max(0.0, ax - reach_), ax);
    const double far = quad::adaptive([&](double y) { return std::exp(-l * (y - ax)) * rest(y); }, ax,
                                      ax + reach_);
    const double e = std::exp(-l * ax);
    return d * e + limit * (2.0 - e) / (2.0 * l * l) + (near + far) / (2.0 * l);
}

DualResolvent dual_resolvent(std::function<double(double)> g, double g_minus_inf, double g_plus_inf,
                             double lambda, const SkewParams& params) {
    return DualResolvent(std::move(g), g_minus_inf, g_plus_inf, lambda, params);
}

double weierstrass_apply(const std::function<double(double)>& f, double t, double x, const SkewParams& params) {
    if (!(t > 0.0)) throw ValidationError("Weierstrass time must be positive");
    (void)SkewParams::make(params.p, params.q);
    const double upper = 8.0 * std::sqrt(t);
    auto integrand = [&](double s) { return std::exp(-s * s / (2.0 * t)) * dual_cosine_value(f, s, x, params); };
    // The dual cosine changes form at s = |x|.
    const double kink = std::min(std::abs(x), upper);
    const double total = quad::adaptive(integrand, 0.0, kink) + quad::adaptive(integrand, kink, upper);
    return std::sqrt(2.0 / (std::numbers::pi * t)) * total;
}

std::vector<double> weierstrass_apply(const std::function<double(double)>& f, double t,
                                      const std::vector<double>& xs, const SkewParams& params) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(weierstrass_apply(f, t, x, params));
    return out;
}

}  // namespace telegraph
