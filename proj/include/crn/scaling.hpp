#pragma once

#include "crn/markov.hpp"

namespace crn {

/// One-parameter family of kinetics: every reaction whose reactant contains
/// tagged species is sped up by factor^<beta, tagged part>. The exponents
/// must come out integral so the factors stay exact rationals.
struct ScalingSpec {
    std::vector<Rational> beta;  // per tagged species, strictly positive
    long long factor = 1;        // the parameter N >= 1
};

/// Inner product of beta with the tagged part of x; throws when non-integral.
long long scaling_level(const std::vector<int>& tagged, const std::vector<Rational>& beta,
                        const Counts& x);

Network scale_kinetics(const Network& net, const std::vector<int>& tagged, const ScalingSpec& spec);

struct ScaledDistribution {
    Distribution dist;
    Rational mass;  // total weight before normalization, in (0, 1]
};

/// pi_N(x) proportional to factor^-level(x) pi(x). When `verify` is set and
/// pi is exact, the per-complex balance of pi_N for the scaled network is
/// checked to be exactly zero (it must be, when pi was complex balanced).
ScaledDistribution scaled_distribution(const Network& net, const std::vector<int>& tagged,
                                       const ScalingSpec& spec, const ComponentSet& comp,
                                       const Distribution& pi, bool verify = true);

struct LimitSupport {
    long long min_level = 0;
    std::vector<State> argmin;  // sorted
};

/// Minimum of the scaling level over the states and its argmin set.
LimitSupport limit_support(const std::vector<State>& states, const std::vector<int>& tagged,
                           const std::vector<Rational>& beta);

/// Pointwise limit of the scaled family: the conditional of pi on the
/// minimum-level slice.
Distribution limit_distribution(const Distribution& pi, const std::vector<int>& tagged,
                                const std::vector<Rational>& beta);

struct ConvergenceRow {
    long long factor;
    Rational mass;
    Rational tv;  // distance between the scaled distribution and the limit
};

/// Exact total-variation distances to the limit for increasing factors.
std::vector<ConvergenceRow> convergence_table(const Network& net, const std::vector<int>& tagged,
                                              const std::vector<Rational>& beta,
                                              const ComponentSet& comp, const Distribution& pi,
                                              const std::vector<long long>& factors,
                                              bool verify = false);

struct CappedConvergence {
    std::vector<ConvergenceRow> rows;
    long long level_cap = 0;
    Rational dropped_mass;  // pi-mass of the states above the cap
};

/// Truncation policy for windows into unbounded components: the table is
/// computed on the sub-level slice {level(x) <= cap} of pi (renormalized),
/// and the discarded mass is reported alongside.
CappedConvergence convergence_table_capped(const Network& net, const std::vector<int>& tagged,
                                           const std::vector<Rational>& beta,
                                           const ComponentSet& comp, const Distribution& pi,
                                           const std::vector<long long>& factors,
                                           long long level_cap);

}  // namespace crn
