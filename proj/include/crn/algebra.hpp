#pragma once

#include <vector>

#include "crn/model.hpp"

namespace crn {

/// Net effect of firing a sequence of reactions: `need` is what the sequence
/// consumes up front, `result` is what it leaves behind. Values of the
/// associative composition below.
struct ReactionPair {
    Complex need;
    Complex result;

    bool operator==(const ReactionPair& o) const { return need == o.need && result == o.result; }
    bool operator<(const ReactionPair& o) const {
        return need != o.need ? need < o.need : result < o.result;
    }
    bool is_self_pair() const { return need == result; }
    Delta delta() const { return vec::sub(result, need); }
};

ReactionPair as_pair(const Reaction& r);

/// Sequential composition: (y1,y1') then (y2,y2') gives
/// (y1 + max(y2-y1', 0), y2' + max(y1'-y2, 0)) componentwise.
ReactionPair compose(const ReactionPair& first, const ReactionPair& second);

/// Left fold of compose over a nonempty sequence. Associativity makes the
/// fold order irrelevant.
ReactionPair compose_fold(const std::vector<ReactionPair>& pairs);

struct PairHash {
    std::size_t operator()(const ReactionPair& p) const {
        vec::Hash h;
        return h(p.need) * 1000003ULL ^ h(p.result);
    }
};

/// A walk over the elimination multi-digraph: nodes[k] -> nodes[k+1] along
/// reaction edges[k]. Node 0 stands for the core; nodes 1..m for the tagged
/// species.
struct Walk {
    std::vector<int> nodes;
    std::vector<int> reactions;

    bool closed() const { return !nodes.empty() && nodes.front() == nodes.back(); }
    std::size_t length() const { return reactions.size(); }
};

enum class Reach {
    yes,
    no,
    undecided,  // cap hit before the search space was exhausted
};

/// Breadth-first reachability of `target` from `origin` by single reaction
/// firings, each feasible at its intermediate state. `cap` bounds the number
/// of expanded states; hitting it yields `undecided`, never `no`.
Reach leads_to(const Network& net, const State& origin, const State& target, std::size_t cap);

}  // namespace crn
