#pragma once

#include <functional>
#include <optional>

#include "crn/system.hpp"

namespace crn {

enum class NumericMode { rational, floating };

struct StateBound {
    std::optional<Counts> box;       // componentwise maximum
    std::optional<long long> total;  // maximum total count
    std::size_t max_states = 1000000;

    bool contains(const State& x) const;
    static StateBound boxed(Counts b);
    static StateBound total_budget(long long t);
};

/// A finite set of states with the flags the analysis needs: `closed` means
/// no feasible jump leaves the set, `mutually_reachable` that every member
/// reaches every other, `bound_exceeded` that the closure was cut off at the
/// bound (so the set is a window into something larger).
struct ComponentSet {
    std::vector<State> states;  // sorted
    bool closed = false;
    bool mutually_reachable = false;
    bool bound_exceeded = false;
    std::size_t generator_nonzeros = 0;

    std::size_t size() const { return states.size(); }
    int index_of(const State& x) const;  // -1 when absent
    bool contains(const State& x) const { return index_of(x) >= 0; }
};

/// Forward closure from the seed under single firings, clipped to the bound.
/// Mutual reachability is verified by a backward sweep unless
/// `assume_mutual_reachability` (cheap for weakly reversible networks).
ComponentSet irreducible_component(const StochasticSystem& sys, const State& seed,
                                   const StateBound& bound, bool assume_mutual_reachability = false);

struct Distribution {
    std::vector<State> states;  // sorted, aligned with probabilities
    NumericMode mode = NumericMode::rational;
    std::vector<Rational> exact;
    std::vector<double> approx;
    std::optional<Rational> normalization;  // constant the weights were divided by

    std::size_t size() const { return states.size(); }
    int index_of(const State& x) const;
    Rational p(const State& x) const;        // exact mode
    double p_float(const State& x) const;    // either mode
    Rational p_at(std::size_t i) const { return exact[i]; }
    static Distribution from_weights(std::vector<State> states, std::vector<Rational> weights);
};

struct SolveOptions {
    NumericMode mode = NumericMode::rational;
    std::size_t rational_max_states = 2000;  // larger components switch to float
    double float_residual = 1e-10;
};

/// Solves the global balance equations on a closed finite component, with the
/// normalization row replacing one redundant balance row. Exact by default.
Distribution stationary_distribution(const StochasticSystem& sys, const ComponentSet& comp,
                                     const SolveOptions& options = {});

struct Residual {
    Rational exact;   // meaningful in rational mode
    double approx = 0.0;
    bool exact_mode = true;

    bool is_zero() const { return exact_mode ? exact == 0 : approx == 0.0; }
};

struct StationaryCheck {
    Residual max_residual;           // worst violation over all states
    Residual max_interior_residual;  // states with no positive inflow from outside the set
    std::size_t states = 0;
    std::size_t interior_states = 0;
};

/// Residuals of the global balance equation over the component. Inflow terms
/// from states outside the set contribute zero, so for truncated sets only
/// the interior residual is meaningful.
StationaryCheck check_stationary(const StochasticSystem& sys, const ComponentSet& comp,
                                 const Distribution& dist);

struct ComplexBalanceCheck {
    struct PerComplex {
        Complex complex;
        std::string label;
        Residual max_residual;
        Residual max_interior_residual;
    };
    std::vector<PerComplex> items;
    Residual max_residual;
    Residual max_interior_residual;
};

/// Per-complex inflow/outflow balance (the complexes are the distinct channel
/// endpoints of the system).
ComplexBalanceCheck check_complex_balance(const StochasticSystem& sys, const ComponentSet& comp,
                                          const Distribution& dist);

struct DetailedBalanceCheck {
    struct PerPair {
        int forward_channel;
        int backward_channel;
        std::string label;
        Residual max_residual;
    };
    std::vector<PerPair> items;
    Residual max_residual;
    std::size_t pairs_checked = 0;
    std::size_t boundary_skipped = 0;  // pairs whose partner state left the set
};

/// Requires every channel to have a reverse channel; throws NotReversible.
DetailedBalanceCheck check_detailed_balance(const StochasticSystem& sys, const ComponentSet& comp,
                                            const Distribution& dist);

/// pi(x) proportional to prod_i c_i^x_i / x_i!, normalized over the component.
Distribution product_form_distribution(const std::vector<Rational>& c, const ComponentSet& comp,
                                       NumericMode mode = NumericMode::rational);

/// Mass-action equilibrium check: for each complex, outgoing rate mass at c
/// against incoming rate mass. All-zero residuals make the product form above
/// stationary and complex balanced.
std::vector<std::pair<std::string, Rational>> deterministic_complex_balance_residuals(
    const Network& net, const std::vector<Rational>& c);

/// Searches for a positive mass-action equilibrium by damped fixed-point
/// iteration in log space; the caller must verify the residuals afterwards.
std::optional<std::vector<Rational>> find_complex_balance_equilibrium(const Network& net,
                                                                      int max_rounds = 20000);

Distribution conditional_distribution(const Distribution& dist,
                                      const std::function<bool(const State&)>& keep);
Distribution conditional_distribution(const Distribution& dist, const std::vector<State>& slice);

/// Probability of a subset under a distribution.
Rational probability_of(const Distribution& dist, const std::function<bool(const State&)>& keep);

/// Mutual-reachability classes of the given states under the system,
/// following only jumps between the given states.
std::vector<ComponentSet> decompose_components(const StochasticSystem& sys,
                                               const std::vector<State>& states);

/// Mass the distribution puts on each class; with conditional_distribution
/// per class this represents a distribution over several components as the
/// weighted combination of per-component distributions.
std::vector<Rational> mixture_weights(const Distribution& dist,
                                      const std::vector<ComponentSet>& classes);

/// Total variation distance; exact in rational mode.
Rational tv_distance(const Distribution& a, const Distribution& b);

/// Marginal over the kept coordinate indices (probabilities are summed).
Distribution marginal(const Distribution& dist, const std::vector<int>& keep);

}  // namespace crn
