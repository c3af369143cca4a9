#include "crn/reduced_kinetics.hpp"

#include <algorithm>
#include <deque>

#include "crn/errors.hpp"
#include "crn/linalg.hpp"

namespace crn {

Rational BranchTable::probability(int reaction) const {
    for (const auto& [r, p] : entries)
        if (r == reaction) return p;
    return Rational(0);
}

BranchTable branch_probabilities(const EliminationGraph& g, const State& x, int node) {
    if (node < 0 || node >= g.node_count()) throw UsageError("branch_probabilities: bad node");
    BranchTable table;
    table.node = node;
    std::vector<std::pair<int, Rational>> raw;
    for (const auto& e : g.edges) {
        if (e.from != node) continue;
        raw.emplace_back(e.id, eval_intensity(g.net, e.id, x));
        table.total_intensity += raw.back().second;
    }
    table.in_domain = table.total_intensity > 0;
    for (auto& [r, v] : raw)
        table.entries.emplace_back(r, table.in_domain ? Rational(v / table.total_intensity) : Rational(0));
    return table;
}

namespace {

// One absorbing-chain walker serves both directions: transient states are
// discovered breadth-first from the seeds, the absorbed mass per bucket comes
// from solving (I - Q)^T m = seed weights. `Expand` lists weighted moves and
// absorptions out of a state.
template <typename Bucket>
struct ChainOutcome {
    std::map<Bucket, Rational> absorbed;
    std::size_t transient_states = 0;
    bool exact = true;
};

template <typename Key, typename Bucket, typename Expand>
ChainOutcome<Bucket> run_absorbing_chain(const std::vector<std::pair<Key, Rational>>& seeds,
                                         const std::map<Bucket, Rational>& direct, Expand expand,
                                         const ChainOptions& options) {
    ChainOutcome<Bucket> out;
    out.absorbed = direct;

    std::map<Key, int> index;
    std::vector<Key> keys;
    std::vector<Rational> seed_weight;
    std::deque<int> queue;

    auto intern = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        if (keys.size() >= options.state_cap)
            throw ChainNotFinite("absorbing chain exceeded " + std::to_string(options.state_cap) +
                                 " states; the finiteness conditions likely fail");
        int id = static_cast<int>(keys.size());
        index.emplace(k, id);
        keys.push_back(k);
        seed_weight.emplace_back(0);
        queue.push_back(id);
        return id;
    };

    for (const auto& [k, w] : seeds) {
        int id = intern(k);
        seed_weight[static_cast<std::size_t>(id)] += w;
    }

    struct Move {
        int to;
        Rational weight;
    };
    std::vector<std::vector<Move>> moves;                      // Q rows
    std::vector<std::vector<std::pair<Bucket, Rational>>> exits;  // R rows

    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        std::vector<std::pair<Key, Rational>> next;
        std::vector<std::pair<Bucket, Rational>> absorbs;
        expand(keys[static_cast<std::size_t>(id)], next, absorbs);
        if (moves.size() <= static_cast<std::size_t>(id)) {
            moves.resize(static_cast<std::size_t>(id) + 1);
            exits.resize(static_cast<std::size_t>(id) + 1);
        }
        for (auto& [k, w] : next) moves[static_cast<std::size_t>(id)].push_back({intern(k), w});
        exits[static_cast<std::size_t>(id)] = std::move(absorbs);
    }

    const std::size_t n = keys.size();
    out.transient_states = n;
    if (n == 0) return out;
    moves.resize(n);
    exits.resize(n);

    std::vector<Rational> mass;
    if (n <= options.exact_max_states) {
        // (I - Q)^T m = v
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& mv : moves[i]) a[static_cast<std::size_t>(mv.to)][i] -= mv.weight;
        auto solved = solve_linear_rational(std::move(a), seed_weight);
        if (!solved) throw InternalError("absorbing chain solve is singular");
        mass = std::move(*solved);
    } else {
        out.exact = false;
        std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i][i] = 1.0;
            v[i] = to_double(seed_weight[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& mv : moves[i]) a[static_cast<std::size_t>(mv.to)][i] -= to_double(mv.weight);
        auto backup = a;
        auto solved = solve_linear_double(std::move(a), v);
        if (!solved) throw InternalError("absorbing chain float solve is singular");
        double scale = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = -to_double(seed_weight[i]);
            for (std::size_t j = 0; j < n; ++j) acc += backup[i][j] * (*solved)[j];
            worst = std::max(worst, std::abs(acc));
            scale = std::max(scale, std::abs(to_double(seed_weight[i])));
        }
        if (worst > options.float_residual * std::max(1.0, scale))
            throw InternalError("absorbing chain float solve failed the residual check");
        mass.reserve(n);
        for (double x : *solved) mass.emplace_back(Rational(x));
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (mass[i] == 0) continue;
        for (const auto& [bucket, w] : exits[i]) out.absorbed[bucket] += mass[i] * w;
    }
    return out;
}

struct ForwardKey {
    int node;
    ReactionPair acc;
    bool operator<(const ForwardKey& o) const {
        return node != o.node ? node < o.node : acc < o.acc;
    }
};

}  // namespace

Rational ReducedIntensities::value(const ReactionPair& effect) const {
    auto it = by_effect.find(effect);
    return it == by_effect.end() ? Rational(0) : it->second;
}

ReducedIntensities reduced_intensities(const ReducedNetwork& rn, const State& x,
                                       const ChainOptions& options) {
    const EliminationGraph& g = rn.graph;
    if (!vec::is_zero(g.project(x)))
        throw UsageError("reduced kinetics are evaluated at states with zero tagged counts");

    std::vector<std::pair<ForwardKey, Rational>> seeds;
    std::map<ReactionPair, Rational> direct;
    for (const auto& e : g.edges) {
        if (e.from != 0) continue;
        Rational w = eval_intensity(g.net, e.id, x);
        if (w == 0) continue;
        ReactionPair p = as_pair(g.net.reactions[static_cast<std::size_t>(e.id)]);
        if (e.to == 0)
            direct[p] += w;
        else
            seeds.emplace_back(ForwardKey{e.to, std::move(p)}, w);
    }

    auto expand = [&](const ForwardKey& key, std::vector<std::pair<ForwardKey, Rational>>& next,
                      std::vector<std::pair<ReactionPair, Rational>>& absorbs) {
        State z = vec::add_delta(x, key.acc.delta());
        BranchTable table = branch_probabilities(g, z, key.node);
        for (const auto& [r, p] : table.entries) {
            if (p == 0) continue;
            const auto& e = g.edges[static_cast<std::size_t>(r)];
            ReactionPair folded = compose(key.acc, as_pair(g.net.reactions[static_cast<std::size_t>(r)]));
            if (e.to == 0)
                absorbs.emplace_back(std::move(folded), p);
            else
                next.emplace_back(ForwardKey{e.to, std::move(folded)}, p);
        }
    };

    auto outcome = run_absorbing_chain<ForwardKey, ReactionPair>(seeds, direct, expand, options);
    ReducedIntensities out;
    out.by_effect = std::move(outcome.absorbed);
    out.transient_states = outcome.transient_states;
    out.exact = outcome.exact;
    return out;
}

Rational reduced_intensity(const ReducedNetwork& rn, std::size_t reaction_index, const State& x,
                           const ChainOptions& options) {
    if (reaction_index >= rn.reactions.size()) throw UsageError("reduced_intensity: bad reaction index");
    return reduced_intensities(rn, x, options).value(rn.reactions[reaction_index].effect);
}

TruncatedWalkSum truncated_walk_sum(const ReducedNetwork& rn, const ReactionPair& target,
                                    const State& x, std::size_t depth) {
    if (depth < 1) throw UsageError("truncated_walk_sum: depth must be at least 1");
    const EliminationGraph& g = rn.graph;
    if (!vec::is_zero(g.project(x)))
        throw UsageError("reduced kinetics are evaluated at states with zero tagged counts");

    TruncatedWalkSum out;
    // Walks of equal length sharing (node, accumulated effect) continue
    // identically, so each depth layer aggregates their weights.
    std::map<ForwardKey, Rational> layer;
    for (const auto& e : g.edges) {
        if (e.from != 0) continue;
        Rational w = eval_intensity(g.net, e.id, x);
        if (w == 0) continue;
        ReactionPair p = as_pair(g.net.reactions[static_cast<std::size_t>(e.id)]);
        if (e.to == 0) {
            if (p == target) out.value += w;
        } else {
            layer[{e.to, p}] += w;
        }
    }
    for (std::size_t step = 1; step < depth && !layer.empty(); ++step) {
        std::map<ForwardKey, Rational> next_layer;
        for (const auto& [key, weight] : layer) {
            State z = vec::add_delta(x, key.acc.delta());
            BranchTable table = branch_probabilities(g, z, key.node);
            for (const auto& [r, p] : table.entries) {
                if (p == 0) continue;
                const auto& e = g.edges[static_cast<std::size_t>(r)];
                ReactionPair folded = compose(key.acc, as_pair(g.net.reactions[static_cast<std::size_t>(r)]));
                if (e.to == 0) {
                    if (folded == target) out.value += weight * p;
                } else {
                    next_layer[{e.to, folded}] += weight * p;
                }
            }
        }
        layer = std::move(next_layer);
    }
    for (const auto& [key, weight] : layer) out.tail_bound += weight;
    out.truncated = out.tail_bound > 0;
    return out;
}

namespace {

struct ReverseKey {
    int node;
    State at;
    bool operator<(const ReverseKey& o) const {
        return node != o.node ? node < o.node : at < o.at;
    }
};

}  // namespace

Rational reverse_chain_absorption(const EliminationGraph& g,
                                  const std::function<Rational(const State&)>& pi, int terminal,
                                  const State& x, const ChainOptions& options) {
    if (terminal < 0 || terminal >= g.net.reaction_count())
        throw UsageError("reverse_chain_absorption: bad reaction id");
    const MultiEdge& final_edge = g.edges[static_cast<std::size_t>(terminal)];
    if (final_edge.to != 0 || final_edge.from == 0)
        throw UsageError("reverse_chain_absorption: reaction must enter the core node");

    const auto& rx = g.net.reactions[static_cast<std::size_t>(terminal)];
    State before = vec::add_delta(x, vec::sub(rx.reactant, rx.product));
    if (!vec::all_nonnegative(before) || !vec::ge(before, rx.reactant))
        throw UsageError("reverse_chain_absorption: reaction cannot have fired into x");

    std::vector<std::vector<int>> incoming(static_cast<std::size_t>(g.node_count()));
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        incoming[static_cast<std::size_t>(g.edges[i].to)].push_back(static_cast<int>(i));

    // Backward step from (node j, z): pick an incoming reaction r, move to the
    // state it fired from, with weight pi(z - d r) l_r(z - dr) over pi(z) times the
    // total outgoing intensity at z.
    auto expand = [&](const ReverseKey& key, std::vector<std::pair<ReverseKey, Rational>>& next,
                      std::vector<std::pair<int, Rational>>& absorbs) {
        Rational here = pi(key.at);
        if (here == 0) return;
        Rational outgoing(0);
        for (const auto& e : g.edges)
            if (e.from == key.node) outgoing += eval_intensity(g.net, e.id, key.at);
        if (outgoing == 0) return;
        Rational denom = here * outgoing;
        for (int r : incoming[static_cast<std::size_t>(key.node)]) {
            const auto& in_rx = g.net.reactions[static_cast<std::size_t>(r)];
            State source = vec::add_delta(key.at, vec::sub(in_rx.reactant, in_rx.product));
            if (!vec::all_nonnegative(source)) continue;
            Rational w = pi(source) * eval_intensity(g.net, r, source);
            if (w == 0) continue;
            w /= denom;
            int from = g.edges[static_cast<std::size_t>(r)].from;
            if (from == 0)
                absorbs.emplace_back(0, w);
            else
                next.emplace_back(ReverseKey{from, std::move(source)}, w);
        }
    };

    std::vector<std::pair<ReverseKey, Rational>> seeds{{ReverseKey{final_edge.from, before}, Rational(1)}};
    auto outcome = run_absorbing_chain<ReverseKey, int>(seeds, {}, expand, options);
    Rational total(0);
    for (const auto& [bucket, w] : outcome.absorbed) total += w;
    return total;
}

}  // namespace crn
