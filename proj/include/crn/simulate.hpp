#pragma once

#include <cstdint>

#include "crn/markov.hpp"

namespace crn {

struct Trajectory {
    std::vector<double> times;   // entry time of each state; times[0] == 0
    std::vector<State> states;
    double t_end = 0;
    std::uint64_t seed = 0;
    bool absorbed = false;  // all intensities vanished before t_end

    std::size_t jumps() const { return states.empty() ? 0 : states.size() - 1; }
};

struct SimOptions {
    std::size_t max_jumps = 10000000;  // ExplosionGuard beyond this
};

/// Jump-chain simulation: exponential holding time at the total intensity,
/// then a channel drawn proportionally to its intensity. Identical seeds give
/// identical trajectories.
Trajectory gillespie(const StochasticSystem& sys, const State& x0, double t_end,
                     std::uint64_t seed, const SimOptions& options = {});

/// Sojourn-time-weighted occupation measure over [burn_in, t_end].
Distribution empirical_distribution(const Trajectory& traj, double burn_in = 0.0);

}  // namespace crn
