#include "crn/simulate.hpp"

#include <cmath>
#include <map>
#include <random>

#include "crn/errors.hpp"

namespace crn {

namespace {

// Uniform in [0, 1) from the raw 64-bit stream; keeps trajectories
// reproducible across standard library implementations.
double next_uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

Trajectory gillespie(const StochasticSystem& sys, const State& x0, double t_end,
                     std::uint64_t seed, const SimOptions& options) {
    if (static_cast<int>(x0.size()) != sys.species_count())
        throw UsageError("gillespie: initial state has the wrong length");
    if (!vec::all_nonnegative(x0)) throw UsageError("gillespie: negative initial counts");
    if (!(t_end > 0)) throw UsageError("gillespie: t_end must be positive");

    Trajectory traj;
    traj.seed = seed;
    traj.t_end = t_end;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    std::mt19937_64 gen(seed);
    State x = x0;
    double t = 0;
    std::vector<double> rates(static_cast<std::size_t>(sys.channel_count()));

    for (;;) {
        double total = 0;
        for (int c = 0; c < sys.channel_count(); ++c) {
            double r = vec::ge(x, sys.channel_need(c)) ? to_double(sys.intensity(c, x)) : 0.0;
            rates[static_cast<std::size_t>(c)] = r;
            total += r;
        }
        if (total <= 0) {
            traj.absorbed = true;  // remaining time is spent in the final state
            return traj;
        }
        double u = next_uniform(gen);
        t += -std::log1p(-u) / total;
        if (t >= t_end) return traj;
        if (traj.jumps() >= options.max_jumps)
            throw ExplosionGuard("jump cap of " + std::to_string(options.max_jumps) +
                                 " reached at t=" + std::to_string(t));
        double pick = next_uniform(gen) * total;
        int chosen = sys.channel_count() - 1;
        for (int c = 0; c < sys.channel_count(); ++c) {
            pick -= rates[static_cast<std::size_t>(c)];
            if (pick < 0) {
                chosen = c;
                break;
            }
        }
        x = vec::add_delta(x, sys.channel_delta(chosen));
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
}

Distribution empirical_distribution(const Trajectory& traj, double burn_in) {
    if (traj.states.empty()) throw UsageError("empirical_distribution: empty trajectory");
    if (!(burn_in < traj.t_end)) throw UsageError("empirical_distribution: burn_in >= t_end");

    std::map<State, double> occupation;
    double total = 0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        double enter = traj.times[i];
        double leave = (i + 1 < traj.times.size()) ? traj.times[i + 1] : traj.t_end;
        double lo = std::max(enter, burn_in);
        double hi = std::min(leave, traj.t_end);
        if (hi <= lo) continue;
        occupation[traj.states[i]] += hi - lo;
        total += hi - lo;
    }
    if (total <= 0) throw UsageError("empirical_distribution: no weight after burn-in");

    Distribution out;
    out.mode = NumericMode::floating;
    out.states.reserve(occupation.size());
    out.approx.reserve(occupation.size());
    for (const auto& [state, weight] : occupation) {
        out.states.push_back(state);
        out.approx.push_back(weight / total);
    }
    return out;
}

}  // namespace crn
