#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/algebra.hpp"
#include "crn/cycles.hpp"
#include "crn/model.hpp"

namespace crn {

/// Partition of a network by a set of pairwise non-interacting species
/// ("tagged" below): node 0 collects the complexes with no tagged content,
/// node i >= 1 the complexes containing exactly one molecule of tagged
/// species i. Each reaction becomes one edge of a multi-digraph on the nodes.
struct EliminationGraph {
    Network net;
    std::vector<int> tagged;                         // species ids, defines node order 1..m
    std::vector<MultiEdge> edges;                    // edge per reaction, edge.id = reaction index
    std::vector<std::vector<Complex>> complex_classes;  // per node, distinct complexes

    int node_count() const { return static_cast<int>(tagged.size()) + 1; }
    int tagged_count() const { return static_cast<int>(tagged.size()); }

    /// Tagged-content projection: counts of the tagged species in y (size m).
    Counts project(const Complex& y) const;

    /// 0 for untagged complexes, i for a single molecule of tagged species i.
    /// Throws NotNonInteracting otherwise.
    int node_of_complex(const Complex& y) const;

    std::string node_name(int node) const;  // "core" or the species name

    /// Composes the walk's reactions in order; validates node/edge consistency.
    ReactionPair walk_sum(const Walk& walk) const;

    /// Whether every tagged complex consists of its single tagged molecule
    /// only (no core content), i.e. the tagged species are intermediates.
    bool tagged_are_intermediates() const;
};

/// Builds the partition or throws NotNonInteracting with the witness complex.
EliminationGraph classify(const Network& net, const std::vector<int>& tagged);

struct ProducedDegraded {
    std::vector<int> produced;  // nodes (1..m) reachable from the core node
    std::vector<int> degraded;  // nodes (1..m) that can reach the core node
    bool eliminable = false;    // produced subset of degraded
};

ProducedDegraded produced_degraded(const EliminationGraph& g);

/// True when every reaction's endpoints lie in one strongly connected
/// component of the complex digraph.
bool check_weak_reversibility(const Network& net);

struct CycleWitness {
    Walk walk;
    Delta net_delta;
};

struct Condition1Result {
    bool holds = true;
    std::optional<CycleWitness> witness;
};

/// Every closed walk avoiding the core node must have zero net effect.
/// Net-effect additivity reduces this to the simple cycles of the subgraph
/// on the tagged nodes.
Condition1Result check_condition1(const EliminationGraph& g);

/// All nonzero-effect simple cycles (the full witness list behind
/// check_condition1).
std::vector<CycleWitness> condition1_violations(const EliminationGraph& g);

struct ConeWitness {
    std::vector<std::pair<Walk, BigInt>> combination;  // cycle walk, positive coefficient
    Delta combined_delta;
};

struct Condition2Result {
    bool part_i = true;   // no nonnegative nonzero combination of cycle deltas is > 0
    bool part_ii = true;  // ... is < 0
    std::optional<ConeWitness> witness_i;
    std::optional<ConeWitness> witness_ii;
};

/// Decided by exact LP feasibility on the cone of simple-cycle deltas.
Condition2Result check_condition2(const EliminationGraph& g);

struct WalkSumEntry {
    ReactionPair effect;
    bool self_pair = false;
    std::size_t walk_classes = 0;  // distinct memoized transitions absorbing into this pair
    Walk representative;
};

/// Network on the untagged species obtained by summing out closed walks
/// through the core node. Kinetics are evaluated on demand (reduced_kinetics).
struct ReducedNetwork {
    EliminationGraph graph;
    std::vector<int> core_species;     // ids not in the tagged set, in network order
    std::vector<int> reduced_support;  // core ids actually appearing in reduced complexes
    std::vector<WalkSumEntry> walk_sums;  // all closed-walk effects, self-pairs included
    std::vector<WalkSumEntry> reactions;  // walk_sums minus self-pairs

    std::string reaction_to_string(std::size_t idx) const;
};

/// Memoized breadth-first fold over (node, accumulated effect) states.
/// Requires the condition-1 check to pass unless `enforce_condition1` is
/// off (then a growing memo set hits `memo_cap` and raises CapExceeded).
ReducedNetwork reduce(const Network& net, const std::vector<int>& tagged,
                      std::size_t memo_cap = 1000000, bool enforce_condition1 = true);

struct ConditionReport {
    std::vector<std::string> tagged_names;
    bool non_interacting = false;
    std::optional<std::string> non_interacting_witness;
    std::vector<std::string> produced;
    std::vector<std::string> degraded;
    bool eliminable = false;
    bool weakly_reversible = false;
    bool intermediates = false;
    Condition1Result condition1;
    Condition2Result condition2;
};

/// Runs the full battery of structural checks. Does not throw on a
/// non-non-interacting set; the outcome is recorded in the report.
ConditionReport analyze_elimination(const Network& net, const std::vector<int>& tagged);

}  // namespace crn
