#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace telegraph {

/// Uniform cell grid on [-L, L] with an even number of cells, so that
/// x = 0 is always the boundary between cells n/2 - 1 and n/2.
class Grid {
public:
    Grid(double half_width, std::size_t n_cells);

    [[nodiscard]] double half_width() const { return half_width_; }
    [[nodiscard]] std::size_t n_cells() const { return n_cells_; }
    [[nodiscard]] double dx() const { return dx_; }
    /// Index of the first cell to the right of the interface.
    [[nodiscard]] std::size_t origin_cell() const { return n_cells_ / 2; }
    [[nodiscard]] double left_edge(std::size_t i) const;
    [[nodiscard]] double center(std::size_t i) const;
    /// Cell containing x (cells are half-open [left, right)); nullopt outside [-L, L).
    [[nodiscard]] std::optional<std::size_t> cell_of(double x) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.half_width_ == b.half_width_ && a.n_cells_ == b.n_cells_;
    }

private:
    double half_width_;
    std::size_t n_cells_;
    double dx_;
};

/// Cell-averaged density on S = R x {+1, -1}, truncated to [-L, L].
struct TwoLineDensity {
    Grid grid;
    std::vector<double> plus;   ///< line +1 (moves right)
    std::vector<double> minus;  ///< line -1 (moves left)

    explicit TwoLineDensity(const Grid& g)
        : grid(g), plus(g.n_cells(), 0.0), minus(g.n_cells(), 0.0) {}

    std::vector<double>& line(int i) { return i > 0 ? plus : minus; }
    [[nodiscard]] const std::vector<double>& line(int i) const { return i > 0 ? plus : minus; }
};

/// Cell-averaged density on a single copy of the real line.
struct LineDensity {
    Grid grid;
    std::vector<double> values;

    explicit LineDensity(const Grid& g) : grid(g), values(g.n_cells(), 0.0) {}
};

[[nodiscard]] double total_mass(const TwoLineDensity& d);
[[nodiscard]] double total_mass(const LineDensity& d);
[[nodiscard]] double l1_distance(const TwoLineDensity& a, const TwoLineDensity& b);
[[nodiscard]] double l1_distance(const LineDensity& a, const LineDensity& b);

/// Averages the two lines: the long-time limit of pure direction flipping.
[[nodiscard]] TwoLineDensity project_P(const TwoLineDensity& d);

/// Exact solution of the flip dynamics du/ds = (B - I)u over a span s >= 0:
/// (u, v) -> (e^{-s}cosh(s) u + e^{-s}sinh(s) v, e^{-s}sinh(s) u + e^{-s}cosh(s) v).
[[nodiscard]] TwoLineDensity flip_exact(const TwoLineDensity& d, double s);
void flip_exact_inplace(TwoLineDensity& d, double s);

/// Sum of both lines, J^{-1} P d in operator terms; equals 2 d(x, 1) on
/// line-symmetric input.
[[nodiscard]] LineDensity collapse_lines(const TwoLineDensity& d);
/// Places half of the line density on each copy (the embedding J).
[[nodiscard]] TwoLineDensity spread_lines(const LineDensity& d);

/// Fills a density with cell averages of a Gaussian N(mean, sd^2) scaled to `mass`.
[[nodiscard]] LineDensity gaussian_cells(const Grid& grid, double mean, double sd, double mass = 1.0);

/// Parameters of the diffusively scaled model.
struct ScaledModel {
    double epsilon = 0.1;
    double flip_intensity = 1.0;

    /// Throws ValidationError unless epsilon > 0 and flip_intensity > 0.
    void check() const;
};

}  // namespace telegraph
