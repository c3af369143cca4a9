#include "crn/algebra.hpp"

#include <deque>
#include <unordered_set>

#include "crn/errors.hpp"

namespace crn {

ReactionPair as_pair(const Reaction& r) { return {r.reactant, r.product}; }

ReactionPair compose(const ReactionPair& first, const ReactionPair& second) {
    ReactionPair out;
    out.need = vec::add(first.need, vec::clamped_sub(second.need, first.result));
    out.result = vec::add(second.result, vec::clamped_sub(first.result, second.need));
    return out;
}

ReactionPair compose_fold(const std::vector<ReactionPair>& pairs) {
    if (pairs.empty()) throw UsageError("compose_fold: empty sequence");
    ReactionPair acc = pairs.front();
    for (std::size_t i = 1; i < pairs.size(); ++i) acc = compose(acc, pairs[i]);
    return acc;
}

Reach leads_to(const Network& net, const State& origin, const State& target, std::size_t cap) {
    if (cap < 1) throw UsageError("leads_to: cap must be at least 1");
    if (origin == target) return Reach::yes;  // empty firing sequence

    std::unordered_set<State, vec::Hash> seen;
    std::deque<State> frontier;
    seen.insert(origin);
    frontier.push_back(origin);
    std::size_t expanded = 0;

    while (!frontier.empty()) {
        State x = std::move(frontier.front());
        frontier.pop_front();
        if (++expanded > cap) return Reach::undecided;
        for (int r = 0; r < net.reaction_count(); ++r) {
            const auto& rx = net.reactions[static_cast<std::size_t>(r)];
            if (!vec::ge(x, rx.reactant)) continue;
            State next = vec::add_delta(x, reaction_delta(rx));
            if (next == target) return Reach::yes;
            if (seen.insert(next).second) frontier.push_back(next);
        }
        if (seen.size() > cap) return Reach::undecided;
    }
    return Reach::no;
}

}  // namespace crn
