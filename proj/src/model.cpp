#include "crn/model.hpp"

#include <functional>
#include <map>
#include <set>

#include "crn/errors.hpp"

namespace crn {

std::vector<std::string> Network::species_names() const {
    std::vector<std::string> names;
    names.reserve(species.size());
    for (const auto& s : species) names.push_back(s.name);
    return names;
}

std::optional<int> Network::species_index(const std::string& name) const {
    for (const auto& s : species)
        if (s.name == name) return s.id;
    return std::nullopt;
}

std::vector<Complex> Network::complexes() const {
    std::vector<Complex> out;
    std::set<Complex> seen;
    for (const auto& r : reactions) {
        if (seen.insert(r.reactant).second) out.push_back(r.reactant);
        if (seen.insert(r.product).second) out.push_back(r.product);
    }
    return out;
}

std::string Network::complex_to_string(const Complex& c) const {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (c[i] != 1) out += std::to_string(c[i]) + " ";
        out += species[i].name;
    }
    return out.empty() ? "0" : out;
}

std::string Network::reaction_to_string(int r) const {
    const auto& rx = reactions.at(static_cast<std::size_t>(r));
    return complex_to_string(rx.reactant) + " -> " + complex_to_string(rx.product);
}

Delta reaction_delta(const Reaction& r) { return vec::sub(r.product, r.reactant); }

Rational eval_intensity(const Network& net, int r, const State& x) {
    const auto& rx = net.reactions.at(static_cast<std::size_t>(r));
    const bool feasible = vec::ge(x, rx.reactant);
    if (const auto* ma = std::get_if<MassAction>(&rx.kinetics)) {
        if (!feasible) return Rational(0);
        BigInt prod = 1;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (long long k = 0; k < rx.reactant[i]; ++k) prod *= (x[i] - k);
        }
        return ma->rate * Rational(prod);
    }
    const auto& ek = std::get<ExprKinetics>(rx.kinetics);
    Rational value = ek.expr->eval(x);
    if (value < 0)
        throw ExprEvaluationError("rate expression for " + net.reaction_to_string(r) +
                                  " is negative at " + vec::to_string(x));
    if ((value > 0) != feasible)
        throw ExprEvaluationError("rate expression for " + net.reaction_to_string(r) + " at " +
                                  vec::to_string(x) +
                                  (feasible ? " vanishes although the reactant is available"
                                            : " is positive although the reactant is unavailable"));
    return value;
}

namespace {

void for_each_state_in_box(const Counts& box, const std::function<void(const State&)>& fn) {
    State x(box.size(), 0);
    for (;;) {
        fn(x);
        std::size_t i = 0;
        while (i < x.size()) {
            if (x[i] < box[i]) {
                ++x[i];
                break;
            }
            x[i] = 0;
            ++i;
        }
        if (i == x.size()) return;
    }
}

}  // namespace

std::vector<Violation> validate_network(const Network& net, const std::optional<Counts>& probe_box) {
    std::vector<Violation> out;
    const std::size_t n = net.species.size();

    std::vector<bool> used(n, false);
    for (const auto& rx : net.reactions) {
        for (std::size_t i = 0; i < n; ++i)
            if (rx.reactant[i] > 0 || rx.product[i] > 0) used[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i])
            out.push_back({Violation::Kind::unused_species,
                           "species " + net.species[i].name + " appears in no complex"});

    std::set<std::pair<Complex, Complex>> seen;
    for (int r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reactions[static_cast<std::size_t>(r)];
        if (rx.reactant == rx.product)
            out.push_back({Violation::Kind::self_loop_reaction,
                           "reaction " + net.reaction_to_string(r) + " is a self-loop"});
        if (!seen.insert({rx.reactant, rx.product}).second)
            out.push_back({Violation::Kind::duplicate_reaction,
                           "duplicate reaction " + net.reaction_to_string(r)});
        if (const auto* ma = std::get_if<MassAction>(&rx.kinetics)) {
            if (ma->rate <= 0)
                out.push_back({Violation::Kind::bad_rate,
                               "nonpositive rate constant for " + net.reaction_to_string(r)});
        }
    }

    if (probe_box) {
        for (int r = 0; r < net.reaction_count(); ++r) {
            const auto& rx = net.reactions[static_cast<std::size_t>(r)];
            if (!std::holds_alternative<ExprKinetics>(rx.kinetics)) continue;
            bool reported = false;  // first offending state per reaction is enough
            for_each_state_in_box(*probe_box, [&](const State& x) {
                if (reported) return;
                try {
                    eval_intensity(net, r, x);
                } catch (const ExprEvaluationError& e) {
                    out.push_back({Violation::Kind::kinetics_contract, e.what()});
                    reported = true;
                }
            });
        }
    }
    return out;
}

}  // namespace crn
