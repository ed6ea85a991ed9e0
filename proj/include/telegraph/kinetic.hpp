#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>

#include "telegraph/density.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/params.hpp"

namespace telegraph {

enum class Side { FromLeft, FromRight };
enum class InterfaceOutcome { Transmit, Reflect, Kill };

/// Resolves an interface arrival from a uniform sample u in [0, 1).
/// FromLeft: [0,p) transmit, [p,p+p') reflect, else kill; FromRight uses q, q'.
[[nodiscard]] InterfaceOutcome interface_interaction(Side side, double u, const InterfaceParams& params);

/// Microscopic particle state. Line +1 moves right at unit speed, line -1 left.
struct ParticleState {
    double x = 0.0;
    int line = 1;
    bool alive = true;
    double t_micro = 0.0;
};

enum class EventKind { Flip, InterfaceHit, Killed, HorizonReached };

struct StepResult {
    EventKind event;
    std::optional<InterfaceOutcome> outcome;  ///< set for InterfaceHit and Killed
};

/// Time until the particle reaches x = 0, or +inf when heading away from it.
/// A particle sitting at 0 after an interface event is heading away.
[[nodiscard]] inline double time_to_interface(const ParticleState& s) {
    if (s.line > 0 && s.x < 0.0) return -s.x;
    if (s.line < 0 && s.x > 0.0) return s.x;
    return std::numeric_limits<double>::infinity();
}

/// Advances one particle to its next event.
///
/// `rng` must provide `exponential(rate)` and `uniform()`. The flip clock is
/// redrawn at every call (memoryless). With a finite `max_time` the particle
/// stops at the horizon if no event occurs before it.
template <class Rng>
StepResult step_to_event(ParticleState& s, Rng& rng, const InterfaceParams& params, double flip_intensity,
                         double max_time = std::numeric_limits<double>::infinity()) {
    if (!s.alive) throw ValidationError("step_to_event called on a killed particle");

    const double clock = rng.exponential(flip_intensity);
    const double hit = time_to_interface(s);
    const double dt = std::min(clock, hit);

    if (dt > max_time) {
        s.x += s.line * max_time;
        s.t_micro += max_time;
        return {EventKind::HorizonReached, std::nullopt};
    }

    s.t_micro += dt;
    if (clock < hit) {
        s.x += s.line * dt;
        s.line = -s.line;
        return {EventKind::Flip, std::nullopt};
    }

    // Exactly at the interface; the approach side follows from the line.
    s.x = 0.0;
    const Side side = s.line > 0 ? Side::FromLeft : Side::FromRight;
    const InterfaceOutcome outcome = interface_interaction(side, rng.uniform(), params);
    switch (outcome) {
        case InterfaceOutcome::Transmit:
            break;
        case InterfaceOutcome::Reflect:
            s.line = -s.line;
            break;
        case InterfaceOutcome::Kill:
            s.alive = false;
            return {EventKind::Killed, outcome};
    }
    return {EventKind::InterfaceHit, outcome};
}

/// Final state of one simulated particle in macroscopic units.
struct ParticleOutcome {
    bool killed = false;
    double x = 0.0;
    int line = 1;
    std::uint64_t events = 0;
};

/// Simulates from macroscopic x0 (nonzero) for macroscopic time t_end under
/// the diffusive scaling x' = eps x, t' = eps^2 t.
template <class Rng>
ParticleOutcome simulate_particle(double x0, int line0, double t_end_macro, const ScaledModel& model,
                                  const InterfaceParams& params, Rng& rng) {
    if (x0 == 0.0) {
        throw ValidationError("initial position exactly at the interface is ambiguous; start at 0+ or 0-");
    }
    if (line0 != 1 && line0 != -1) throw ValidationError("line must be +1 or -1");
    if (!(t_end_macro >= 0.0)) throw ValidationError("simulation horizon must be non-negative");

    ParticleOutcome out;
    out.x = x0;
    out.line = line0;
    if (t_end_macro == 0.0) return out;

    const double eps = model.epsilon;
    ParticleState s{x0 / eps, line0, true, 0.0};
    const double horizon = t_end_macro / (eps * eps);
    while (s.t_micro < horizon) {
        const StepResult r = step_to_event(s, rng, params, model.flip_intensity, horizon - s.t_micro);
        ++out.events;
        if (r.event == EventKind::Killed) {
            out.killed = true;
            out.line = s.line;
            out.x = eps * s.x;
            return out;
        }
        if (r.event == EventKind::HorizonReached) break;
    }
    out.x = eps * s.x;
    out.line = s.line;
    return out;
}

/// Point mass at a nonzero position on one line.
struct PointMass {
    double x = 0.0;
    int line = 1;
};

using InitialCondition = std::variant<PointMass, TwoLineDensity>;

struct EnsembleResult {
    TwoLineDensity density;  ///< histogram counts / (N dx)
    std::uint64_t n_particles = 0;
    std::uint64_t survivors_in_grid = 0;
    std::uint64_t escaped = 0;  ///< survivors that ended outside [-L, L)
    std::uint64_t killed = 0;
    double killed_fraction = 0.0;
    /// Expected L1 size of the histogram's sampling noise,
    /// sum over bins of sqrt(2/pi) sqrt(p(1-p)/N).
    double l1_sampling_error = 0.0;
};

/// Runs N independent particles; particle i draws from ParticleStream(seed, i),
/// so the result is bit-identical for every thread count.
[[nodiscard]] EnsembleResult simulate_ensemble(const InitialCondition& init, std::uint64_t n_particles,
                                               const ScaledModel& model, const InterfaceParams& params,
                                               double t_macro, std::uint64_t seed, const Grid& grid,
                                               unsigned threads = 1);

}  // namespace telegraph
