#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "telegraph/density.hpp"
#include "telegraph/skew_kernels.hpp"

namespace telegraph {

/// Bounded continuous observable sampled at the cell centers of a grid,
/// with its limits at -inf and +inf stored separately. Samples past either
/// end of the grid read the corresponding limit.
struct ObservableFunction {
    Grid grid;
    std::vector<double> values;
    double at_minus_inf = 0.0;
    double at_plus_inf = 0.0;

    explicit ObservableFunction(const Grid& g) : grid(g), values(g.n_cells(), 0.0) {}

    /// Value at center index k, which may fall outside [0, n).
    [[nodiscard]] double at(long k) const {
        if (k < 0) return at_minus_inf;
        if (k >= static_cast<long>(values.size())) return at_plus_inf;
        return values[static_cast<std::size_t>(k)];
    }
    [[nodiscard]] double sup_norm() const;
};

/// Number of cells spanned by |t|; throws ValidationError unless |t| is an
/// integer multiple of dx.
[[nodiscard]] std::size_t commensurate_shift(const Grid& grid, double t);

/// Cosine family generated by Delta_{p,q} acting on a cell-averaged density
/// (method of images). Mass shifted past the grid edge is dropped.
[[nodiscard]] LineDensity cosine_apply(const LineDensity& phi, double t, const SkewParams& params);

/// Dual cosine family acting on an observable. Exact on the center lattice.
[[nodiscard]] ObservableFunction dual_cosine_apply(const ObservableFunction& f, double t, const SkewParams& params);

/// Pointwise dual cosine value C*_{p,q}(t) f(x) for an observable given as a callable.
[[nodiscard]] double dual_cosine_value(const std::function<double(double)>& f, double t, double x,
                                       const SkewParams& params);

/// Bound M(p,q) = 2 max(p,q)/(p+q) on the sup-norm of C*_{p,q}(t).
[[nodiscard]] double dual_cosine_bound(const SkewParams& params);

struct DualResolventCoeffs {
    double c_minus = 0.0;
    double c_plus = 0.0;
    double d_minus = 0.0;
    double d_plus = 0.0;
};

/// f = (lambda^2 - Delta*_{p,q})^{-1} g for g in C[-inf, +inf].
class DualResolvent {
public:
    DualResolvent(std::function<double(double)> g, double g_minus_inf, double g_plus_inf, double lambda,
                  const SkewParams& params);

    [[nodiscard]] const DualResolventCoeffs& coeffs() const { return coeffs_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    /// f(x); at x = 0 both branches agree.
    [[nodiscard]] double operator()(double x) const;

private:
    std::function<double(double)> g_;
    double g_minus_inf_;
    double g_plus_inf_;
    double lambda_;
    double reach_;
    DualResolventCoeffs coeffs_;
};

[[nodiscard]] DualResolvent dual_resolvent(std::function<double(double)> g, double g_minus_inf,
                                           double g_plus_inf, double lambda, const SkewParams& params);

/// Semigroup e^{t Delta*/2} f(x) from the dual cosine family by Gaussian
/// averaging over s in [0, 8 sqrt(t)].
[[nodiscard]] double weierstrass_apply(const std::function<double(double)>& f, double t, double x,
                                       const SkewParams& params);
[[nodiscard]] std::vector<double> weierstrass_apply(const std::function<double(double)>& f, double t,
                                                    const std::vector<double>& xs, const SkewParams& params);

}  // namespace telegraph
