#include "telegraph/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "telegraph/philox.hpp"

namespace telegraph {

InterfaceOutcome interface_interaction(Side side, double u, const InterfaceParams& params) {
    const double transmit = side == Side::FromLeft ? params.p : params.q;
    const double reflect = side == Side::FromLeft ? params.p_prime : params.q_prime;
    if (u < transmit) return InterfaceOutcome::Transmit;
    if (u < transmit + reflect) return InterfaceOutcome::Reflect;
    return InterfaceOutcome::Kill;
}

namespace {

/// Inverse-CDF sampler over the 2n (line, cell) bins of a density.
class DensitySampler {
public:
    explicit DensitySampler(const TwoLineDensity& d) : grid_(d.grid) {
        const std::size_t n = d.grid.n_cells();
        cdf_.reserve(2 * n);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d.plus[i] < 0.0 || d.minus[i] < 0.0) {
                throw ValidationError("initial density must be non-negative");
            }
        }
        for (std::size_t i = 0; i < n; ++i) cdf_.push_back(acc += d.plus[i]);
        for (std::size_t i = 0; i < n; ++i) cdf_.push_back(acc += d.minus[i]);
        if (!(acc > 0.0)) throw ValidationError("initial density has zero mass");
        total_ = acc;
    }

    template <class Rng>
    PointMass sample(Rng& rng) const {
        const double target = rng.uniform() * total_;
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        if (it == cdf_.end()) it = std::lower_bound(cdf_.begin(), cdf_.end(), total_);
        auto bin = static_cast<std::size_t>(it - cdf_.begin());
        const std::size_t n = grid_.n_cells();
        const int line = bin < n ? 1 : -1;
        const std::size_t cell = bin % n;
        // uniform() is in (0,1), so the position is never exactly 0.
        return {grid_.left_edge(cell) + rng.uniform() * grid_.dx(), line};
    }

private:
    Grid grid_;
    std::vector<double> cdf_;
    double total_ = 0.0;
};

struct Tally {
    std::vector<std::uint64_t> plus, minus;
    std::uint64_t escaped = 0;
    std::uint64_t killed = 0;

    explicit Tally(std::size_t n) : plus(n, 0), minus(n, 0) {}
};

}  // namespace

EnsembleResult simulate_ensemble(const InitialCondition& init, std::uint64_t n_particles, const ScaledModel& model,
                                 const InterfaceParams& params, double t_macro, std::uint64_t seed,
                                 const Grid& grid, unsigned threads) {
    if (n_particles == 0) throw ValidationError("ensemble needs at least one particle");
    if (!(t_macro >= 0.0)) throw ValidationError("simulation horizon must be non-negative");
    model.check();

    std::optional<DensitySampler> sampler;
    if (const auto* d = std::get_if<TwoLineDensity>(&init)) {
        sampler.emplace(*d);
    } else {
        const auto& pm = std::get<PointMass>(init);
        if (pm.x == 0.0) {
            throw ValidationError("initial point mass exactly at the interface is ambiguous; start at 0+ or 0-");
        }
    }

    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(threads == 0 ? 1 : threads, 1, n_particles));
    std::vector<Tally> tallies(workers, Tally(grid.n_cells()));

    auto run_range = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Tally& tally = tallies[w];
        for (std::uint64_t i = begin; i < end; ++i) {
            ParticleStream rng(seed, i);
            const PointMass start = sampler ? sampler->sample(rng) : std::get<PointMass>(init);
            const ParticleOutcome out = simulate_particle(start.x, start.line, t_macro, model, params, rng);
            if (out.killed) {
                ++tally.killed;
                continue;
            }
            const auto cell = grid.cell_of(out.x);
            if (!cell) {
                ++tally.escaped;
                continue;
            }
            ++(out.line > 0 ? tally.plus : tally.minus)[*cell];
        }
    };

    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = n_particles / workers;
        const std::uint64_t extra = n_particles % workers;
        std::uint64_t begin = 0;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
            if (w + 1 == workers) {
                run_range(w, begin, end);
            } else {
                pool.emplace_back(run_range, w, begin, end);
            }
            begin = end;
        }
    }

    // Integer merge keeps the result independent of the worker split.
    Tally total(grid.n_cells());
    for (const Tally& t : tallies) {
        for (std::size_t i = 0; i < grid.n_cells(); ++i) {
            total.plus[i] += t.plus[i];
            total.minus[i] += t.minus[i];
        }
        total.escaped += t.escaped;
        total.killed += t.killed;
    }

    EnsembleResult result{TwoLineDensity(grid)};
    result.n_particles = n_particles;
    result.killed = total.killed;
    result.escaped = total.escaped;
    result.killed_fraction = static_cast<double>(total.killed) / static_cast<double>(n_particles);

    const double n = static_cast<double>(n_particles);
    const double norm = 1.0 / (n * grid.dx());
    const double noise_factor = std::sqrt(2.0 / std::numbers::pi);
    double noise = 0.0;
    std::uint64_t in_grid = 0;
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        for (const auto* counts : {&total.plus, &total.minus}) {
            const double c = static_cast<double>((*counts)[i]);
            const double prob = c / n;
            noise += noise_factor * std::sqrt(prob * (1.0 - prob) / n);
            in_grid += (*counts)[i];
        }
        result.density.plus[i] = static_cast<double>(total.plus[i]) * norm;
        result.density.minus[i] = static_cast<double>(total.minus[i]) * norm;
    }
    result.survivors_in_grid = in_grid;
    result.l1_sampling_error = noise;
    return result;
}

}  // namespace telegraph
