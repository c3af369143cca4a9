#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crn/expr.hpp"
#include "crn/rational.hpp"
#include "crn/vec.hpp"

namespace crn {

struct Species {
    int id = 0;             // dense index into count vectors
    std::string name;       // nonempty, unique within a network
};

/// A complex is a nonnegative integer combination of species, stored densely.
using Complex = Counts;
using State = Counts;

/// Stochastic mass-action: rate constant times the falling-factorial product
/// of the reactant counts.
struct MassAction {
    Rational rate;  // > 0
};

/// User-supplied closed-form intensity. `source` keeps the original text so
/// serialization round-trips verbatim modulo whitespace.
struct ExprKinetics {
    RateExprPtr expr;
    std::string source;
};

using Kinetics = std::variant<MassAction, ExprKinetics>;

struct Reaction {
    Complex reactant;
    Complex product;
    Kinetics kinetics;
};

struct Network {
    std::vector<Species> species;
    std::vector<Reaction> reactions;

    int species_count() const { return static_cast<int>(species.size()); }
    int reaction_count() const { return static_cast<int>(reactions.size()); }
    std::vector<std::string> species_names() const;
    std::optional<int> species_index(const std::string& name) const;

    /// All distinct complexes appearing as a reactant or product, in first-use order.
    std::vector<Complex> complexes() const;

    /// Renders a complex like "E + 2 A", or "0" for the empty complex.
    std::string complex_to_string(const Complex& c) const;
    std::string reaction_to_string(int r) const;
};

/// Jump vector of a reaction: product minus reactant.
Delta reaction_delta(const Reaction& r);

/// Intensity of reaction `r` at state `x`. Mass-action intensities vanish
/// whenever the reactant is not available. Expression kinetics are checked
/// against the compatibility contract (positive exactly when the reactant is
/// available) at the evaluated state and must be nonnegative.
Rational eval_intensity(const Network& net, int r, const State& x);

struct Violation {
    enum class Kind { unused_species, self_loop_reaction, duplicate_reaction, bad_rate, kinetics_contract };
    Kind kind;
    std::string detail;
};

/// Structural validation: species coverage, no self-loop reactions, no
/// duplicate (reactant, product) pairs, positive mass-action rates. When
/// `probe_box` is given, expression kinetics are additionally probed on every
/// state of the box for compatibility-contract violations.
std::vector<Violation> validate_network(const Network& net,
                                        const std::optional<Counts>& probe_box = std::nullopt);

}  // namespace crn
