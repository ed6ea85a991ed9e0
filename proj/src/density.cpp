#include "telegraph/density.hpp"

#include <cmath>
#include <string>

#include "telegraph/errors.hpp"

namespace telegraph {

Grid::Grid(double half_width, std::size_t n_cells)
    : half_width_(half_width), n_cells_(n_cells), dx_(0.0) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw ValidationError("grid half-width must be positive and finite");
    }
    if (n_cells == 0 || n_cells % 2 != 0) {
        throw ValidationError("grid cell count must be even and positive, got " + std::to_string(n_cells));
    }
    dx_ = 2.0 * half_width / static_cast<double>(n_cells);
}

double Grid::left_edge(std::size_t i) const {
    // Measured from the origin so that the interface edge is exactly 0.
    return (static_cast<double>(i) - static_cast<double>(n_cells_ / 2)) * dx_;
}

double Grid::center(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(n_cells_ / 2) + 0.5) * dx_;
}

std::optional<std::size_t> Grid::cell_of(double x) const {
    if (!(x >= -half_width_ && x < half_width_)) return std::nullopt;
    const double k = std::floor(x / dx_) + static_cast<double>(n_cells_ / 2);
    if (k < 0.0) return 0;
    const auto i = static_cast<std::size_t>(k);
    return i < n_cells_ ? i : n_cells_ - 1;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw GridMismatchError("densities live on different grids");
}

double abs_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double abs_diff_sum(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

}  // namespace

double total_mass(const TwoLineDensity& d) {
    return d.grid.dx() * (abs_sum(d.plus) + abs_sum(d.minus));
}

double total_mass(const LineDensity& d) { return d.grid.dx() * abs_sum(d.values); }

double l1_distance(const TwoLineDensity& a, const TwoLineDensity& b) {
    require_same_grid(a.grid, b.grid);
    return a.grid.dx() * (abs_diff_sum(a.plus, b.plus) + abs_diff_sum(a.minus, b.minus));
}

double l1_distance(const LineDensity& a, const LineDensity& b) {
    require_same_grid(a.grid, b.grid);
    return a.grid.dx() * abs_diff_sum(a.values, b.values);
}

TwoLineDensity project_P(const TwoLineDensity& d) {
    TwoLineDensity out(d.grid);
    for (std::size_t i = 0; i < d.plus.size(); ++i) {
        const double avg = 0.5 * (d.plus[i] + d.minus[i]);
        out.plus[i] = avg;
        out.minus[i] = avg;
    }
    return out;
}

void flip_exact_inplace(TwoLineDensity& d, double s) {
    if (!(s >= 0.0)) throw ValidationError("flip span must be non-negative");
    // e^{-s} sinh s = (1 - e^{-2s})/2, written with expm1 for small s.
    const double cross = -0.5 * std::expm1(-2.0 * s);
    const double stay = 1.0 - cross;
    for (std::size_t i = 0; i < d.plus.size(); ++i) {
        const double u = d.plus[i];
        const double v = d.minus[i];
        d.plus[i] = stay * u + cross * v;
        d.minus[i] = cross * u + stay * v;
    }
}

TwoLineDensity flip_exact(const TwoLineDensity& d, double s) {
    TwoLineDensity out = d;
    flip_exact_inplace(out, s);
    return out;
}

LineDensity collapse_lines(const TwoLineDensity& d) {
    LineDensity out(d.grid);
    for (std::size_t i = 0; i < d.plus.size(); ++i) out.values[i] = d.plus[i] + d.minus[i];
    return out;
}

TwoLineDensity spread_lines(const LineDensity& d) {
    TwoLineDensity out(d.grid);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        out.plus[i] = 0.5 * d.values[i];
        out.minus[i] = 0.5 * d.values[i];
    }
    return out;
}

LineDensity gaussian_cells(const Grid& grid, double mean, double sd, double mass) {
    if (!(sd > 0.0)) throw ValidationError("Gaussian standard deviation must be positive");
    LineDensity out(grid);
    const double scale = 1.0 / (sd * std::sqrt(2.0));
    auto cdf = [&](double x) { return 0.5 * std::erfc(-(x - mean) * scale); };
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        const double a = grid.left_edge(i);
        const double b = a + grid.dx();
        // Difference of upper tails is accurate on the right flank.
        const double w = (a > mean) ? 0.5 * (std::erfc((a - mean) * scale) - std::erfc((b - mean) * scale))
                                    : cdf(b) - cdf(a);
        out.values[i] = mass * w / grid.dx();
    }
    return out;
}

void ScaledModel::check() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be positive");
    if (!(flip_intensity > 0.0) || !std::isfinite(flip_intensity)) {
        throw ValidationError("flip intensity must be positive");
    }
}

}  // namespace telegraph
