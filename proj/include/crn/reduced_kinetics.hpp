#pragma once

#include <functional>
#include <map>

#include "crn/elimination.hpp"

namespace crn {

/// Exit probabilities of one multi-digraph node at a given state: each
/// outgoing reaction's intensity over the node's total outgoing intensity,
/// with 0/0 = 0. Rows sum to 1 exactly when some outgoing reaction can fire.
struct BranchTable {
    int node = 0;
    std::vector<std::pair<int, Rational>> entries;  // reaction id -> probability
    Rational total_intensity;                       // denominator
    bool in_domain = false;

    Rational probability(int reaction) const;
};

BranchTable branch_probabilities(const EliminationGraph& g, const State& x, int node);

struct ChainOptions {
    std::size_t state_cap = 200000;     // transient states before ChainNotFinite
    std::size_t exact_max_states = 2000;  // larger chains switch to a checked float solve
    double float_residual = 1e-12;
};

struct ReducedIntensities {
    std::map<ReactionPair, Rational> by_effect;  // every closed-walk effect feasible at x
    std::size_t transient_states = 0;
    bool exact = true;

    Rational value(const ReactionPair& effect) const;
};

/// Evaluates the reduced kinetics at a state with zero tagged counts: walks
/// out of the core are folded into an absorbing chain over (node, accumulated
/// effect) whose absorbed weight per effect is obtained from one linear
/// solve. The weight of a walk is the intensity of its first reaction times
/// the branch probabilities of the remaining steps, so the solve captures the
/// full series including loops.
ReducedIntensities reduced_intensities(const ReducedNetwork& rn, const State& x,
                                       const ChainOptions& options = {});

Rational reduced_intensity(const ReducedNetwork& rn, std::size_t reaction_index, const State& x,
                           const ChainOptions& options = {});

struct TruncatedWalkSum {
    Rational value;        // sum over closed walks of length <= depth
    Rational tail_bound;   // weight still travelling at the depth cutoff
    bool truncated = false;
};

/// Depth-limited series for one effect; a lower bound that grows to the
/// absorbing-chain value. Test oracle for reduced_intensities.
TruncatedWalkSum truncated_walk_sum(const ReducedNetwork& rn, const ReactionPair& target,
                                    const State& x, std::size_t depth);

/// Total absorption probability of the reverse walk chain seeded at the
/// product side of reaction `terminal` (which must end at the core node),
/// with steps weighted by the stationary measure `pi`. Equals 1 exactly when
/// the inflow side of the per-complex balance transfers to the reduced
/// network at x.
Rational reverse_chain_absorption(const EliminationGraph& g,
                                  const std::function<Rational(const State&)>& pi, int terminal,
                                  const State& x, const ChainOptions& options = {});

}  // namespace crn
