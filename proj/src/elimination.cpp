#include "crn/elimination.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "crn/errors.hpp"
#include "crn/simplex.hpp"

namespace crn {

Counts EliminationGraph::project(const Complex& y) const {
    Counts u(tagged.size(), 0);
    for (std::size_t i = 0; i < tagged.size(); ++i) u[i] = y[static_cast<std::size_t>(tagged[i])];
    return u;
}

int EliminationGraph::node_of_complex(const Complex& y) const {
    long long total = 0;
    int node = 0;
    for (std::size_t i = 0; i < tagged.size(); ++i) {
        long long c = y[static_cast<std::size_t>(tagged[i])];
        total += c;
        if (c > 0) node = static_cast<int>(i) + 1;
    }
    if (total == 0) return 0;
    if (total == 1) return node;
    throw NotNonInteracting(net.complex_to_string(y));
}

std::string EliminationGraph::node_name(int node) const {
    if (node == 0) return "core";
    return net.species[static_cast<std::size_t>(tagged[static_cast<std::size_t>(node - 1)])].name;
}

ReactionPair EliminationGraph::walk_sum(const Walk& walk) const {
    if (walk.reactions.empty() || walk.nodes.size() != walk.reactions.size() + 1)
        throw UsageError("walk_sum: malformed walk");
    std::vector<ReactionPair> pairs;
    for (std::size_t k = 0; k < walk.reactions.size(); ++k) {
        int r = walk.reactions[k];
        if (r < 0 || r >= net.reaction_count()) throw UsageError("walk_sum: bad reaction id");
        const MultiEdge& e = edges[static_cast<std::size_t>(r)];
        if (e.from != walk.nodes[k] || e.to != walk.nodes[k + 1])
            throw UsageError("walk_sum: edge " + std::to_string(r) + " does not match walk nodes");
        pairs.push_back(as_pair(net.reactions[static_cast<std::size_t>(r)]));
    }
    return compose_fold(pairs);
}

bool EliminationGraph::tagged_are_intermediates() const {
    for (int node = 1; node < node_count(); ++node) {
        for (const Complex& y : complex_classes[static_cast<std::size_t>(node)]) {
            if (vec::total(y) != 1) return false;  // anything beyond the single tagged molecule
        }
    }
    return true;
}

EliminationGraph classify(const Network& net, const std::vector<int>& tagged) {
    if (tagged.empty()) throw UsageError("classify: empty species set");
    if (tagged.size() >= net.species.size())
        throw UsageError("classify: the set must be a proper subset of the species");
    {
        std::set<int> dedup(tagged.begin(), tagged.end());
        if (dedup.size() != tagged.size()) throw UsageError("classify: duplicate species in set");
        for (int id : tagged)
            if (id < 0 || id >= net.species_count()) throw UsageError("classify: bad species id");
    }

    EliminationGraph g;
    g.net = net;
    g.tagged = tagged;
    g.complex_classes.assign(static_cast<std::size_t>(g.node_count()), {});

    std::set<Complex> seen;
    auto note_complex = [&](const Complex& y) {
        int node = g.node_of_complex(y);
        if (seen.insert(y).second) g.complex_classes[static_cast<std::size_t>(node)].push_back(y);
        return node;
    };

    for (int r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reactions[static_cast<std::size_t>(r)];
        int from = note_complex(rx.reactant);
        int to = note_complex(rx.product);
        g.edges.push_back({from, to, r});
    }
    return g;
}

namespace {

std::vector<int> reachable_nodes(int node_count, const std::vector<MultiEdge>& edges, int start,
                                 bool reverse) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
    for (const auto& e : edges) {
        int a = reverse ? e.to : e.from;
        int b = reverse ? e.from : e.to;
        adj[static_cast<std::size_t>(a)].push_back(b);
    }
    std::vector<bool> seen(static_cast<std::size_t>(node_count), false);
    std::deque<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    std::vector<int> out;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                out.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ProducedDegraded produced_degraded(const EliminationGraph& g) {
    ProducedDegraded out;
    for (int v : reachable_nodes(g.node_count(), g.edges, 0, false))
        if (v != 0) out.produced.push_back(v);
    for (int v : reachable_nodes(g.node_count(), g.edges, 0, true))
        if (v != 0) out.degraded.push_back(v);
    out.eliminable = std::includes(out.degraded.begin(), out.degraded.end(), out.produced.begin(),
                                   out.produced.end());
    return out;
}

bool check_weak_reversibility(const Network& net) {
    auto complexes = net.complexes();
    std::map<Complex, int> index;
    for (std::size_t i = 0; i < complexes.size(); ++i) index[complexes[i]] = static_cast<int>(i);

    const int n = static_cast<int>(complexes.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> arcs;
    for (const auto& rx : net.reactions) {
        int a = index[rx.reactant];
        int b = index[rx.product];
        adj[static_cast<std::size_t>(a)].push_back(b);
        arcs.emplace_back(a, b);
    }

    // Tarjan strongly connected components, iterative.
    std::vector<int> comp(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n)),
        num(static_cast<std::size_t>(n), -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    int counter = 0, comp_count = 0;

    struct Frame {
        int v;
        std::size_t next_child;
    };
    for (int s = 0; s < n; ++s) {
        if (num[static_cast<std::size_t>(s)] != -1) continue;
        std::vector<Frame> frames{{s, 0}};
        num[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = counter++;
        stack.push_back(s);
        on_stack[static_cast<std::size_t>(s)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            auto& children = adj[static_cast<std::size_t>(f.v)];
            if (f.next_child < children.size()) {
                int w = children[f.next_child++];
                if (num[static_cast<std::size_t>(w)] == -1) {
                    num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], num[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == num[static_cast<std::size_t>(f.v)]) {
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        comp[static_cast<std::size_t>(w)] = comp_count;
                        if (w == f.v) break;
                    }
                    ++comp_count;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().v;
                    low[static_cast<std::size_t>(parent)] =
                        std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
                }
            }
        }
    }

    for (const auto& [a, b] : arcs)
        if (comp[static_cast<std::size_t>(a)] != comp[static_cast<std::size_t>(b)]) return false;
    return true;
}

namespace {

// Cycles of the subgraph on the tagged nodes (core node and its edges removed),
// returned as walks over the original graph.
std::vector<Walk> tagged_subgraph_cycles(const EliminationGraph& g) {
    std::vector<MultiEdge> sub;
    std::vector<int> original_index;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (e.from == 0 || e.to == 0) continue;
        sub.push_back({e.from - 1, e.to - 1, e.id});
        original_index.push_back(static_cast<int>(i));
    }
    auto cycles = simple_cycles(g.tagged_count(), sub);
    std::vector<Walk> out;
    out.reserve(cycles.size());
    for (const auto& cycle : cycles) {
        Walk w;
        for (int ei : cycle) {
            const auto& e = sub[static_cast<std::size_t>(ei)];
            w.nodes.push_back(e.from + 1);
            w.reactions.push_back(e.id);
        }
        w.nodes.push_back(w.nodes.front());
        out.push_back(std::move(w));
    }
    return out;
}

Delta walk_delta(const EliminationGraph& g, const Walk& w) {
    Delta d(g.net.species.size(), 0);
    for (int r : w.reactions)
        d = vec::add_delta(d, reaction_delta(g.net.reactions[static_cast<std::size_t>(r)]));
    return d;
}

}  // namespace

Condition1Result check_condition1(const EliminationGraph& g) {
    Condition1Result out;
    for (const Walk& cycle : tagged_subgraph_cycles(g)) {
        Delta d = walk_delta(g, cycle);
        if (!vec::is_zero(d)) {
            out.holds = false;
            out.witness = CycleWitness{cycle, d};
            return out;
        }
    }
    return out;
}

std::vector<CycleWitness> condition1_violations(const EliminationGraph& g) {
    std::vector<CycleWitness> out;
    for (const Walk& cycle : tagged_subgraph_cycles(g)) {
        Delta d = walk_delta(g, cycle);
        if (!vec::is_zero(d)) out.push_back({cycle, d});
    }
    return out;
}

Condition2Result check_condition2(const EliminationGraph& g) {
    Condition2Result out;
    auto cycles = tagged_subgraph_cycles(g);
    if (cycles.empty()) return out;

    std::vector<std::vector<long long>> deltas;
    deltas.reserve(cycles.size());
    for (const auto& c : cycles) deltas.push_back(walk_delta(g, c));

    auto build_witness = [&](const std::vector<BigInt>& coeffs) {
        ConeWitness w;
        Delta combined(g.net.species.size(), 0);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] == 0) continue;
            w.combination.emplace_back(cycles[j], coeffs[j]);
            long long c = coeffs[j].convert_to<long long>();
            for (std::size_t i = 0; i < combined.size(); ++i) combined[i] += c * deltas[j][i];
        }
        w.combined_delta = std::move(combined);
        return w;
    };

    if (auto up = positive_cone_combination(deltas)) {
        out.part_i = false;
        out.witness_i = build_witness(*up);
    }
    std::vector<std::vector<long long>> negated = deltas;
    for (auto& v : negated)
        for (auto& x : v) x = -x;
    if (auto down = positive_cone_combination(negated)) {
        out.part_ii = false;
        out.witness_ii = build_witness(*down);
    }
    return out;
}

std::string ReducedNetwork::reaction_to_string(std::size_t idx) const {
    const auto& e = reactions.at(idx);
    return graph.net.complex_to_string(e.effect.need) + " -> " +
           graph.net.complex_to_string(e.effect.result);
}

ReducedNetwork reduce(const Network& net, const std::vector<int>& tagged, std::size_t memo_cap,
                      bool enforce_condition1) {
    EliminationGraph g = classify(net, tagged);
    auto pd = produced_degraded(g);
    if (!pd.eliminable)
        throw UsageError("reduce: set is not eliminable (some produced species cannot be degraded)");
    if (enforce_condition1) {
        auto c1 = check_condition1(g);
        if (!c1.holds) {
            const auto& w = *c1.witness;
            std::string text;
            for (std::size_t k = 0; k < w.walk.reactions.size(); ++k)
                text += (k ? ", " : "") + g.net.reaction_to_string(w.walk.reactions[k]);
            throw Condition1Violated(text + " with net effect " + vec::to_string(w.net_delta));
        }
    }

    // Memoized BFS over (node, accumulated effect). Parents are kept so one
    // representative walk per absorbed effect can be reconstructed.
    struct MemoState {
        int node;
        ReactionPair acc;
        int parent;  // memo index, -1 for a seed
        int via_reaction;
    };
    std::vector<MemoState> memo;
    std::map<std::pair<int, ReactionPair>, int> memo_index;
    std::deque<int> queue;

    auto push_state = [&](int node, const ReactionPair& acc, int parent, int via) -> void {
        auto key = std::make_pair(node, acc);
        if (memo_index.count(key)) return;
        if (memo.size() >= memo_cap) throw CapExceeded("reduction memo");
        int idx = static_cast<int>(memo.size());
        memo.push_back({node, acc, parent, via});
        memo_index[key] = idx;
        queue.push_back(idx);
    };

    struct Absorbed {
        std::size_t walk_classes = 0;
        Walk representative;
    };
    std::map<ReactionPair, Absorbed> absorbed;

    auto reconstruct = [&](int memo_idx, int final_reaction) {
        std::vector<int> rs{final_reaction};
        std::vector<int> nodes{0};
        int cur = memo_idx;
        while (cur != -1) {
            rs.push_back(memo[static_cast<std::size_t>(cur)].via_reaction);
            nodes.push_back(memo[static_cast<std::size_t>(cur)].node);
            cur = memo[static_cast<std::size_t>(cur)].parent;
        }
        nodes.push_back(0);
        Walk w;
        w.nodes.assign(nodes.rbegin(), nodes.rend());
        w.reactions.assign(rs.rbegin(), rs.rend());
        return w;
    };

    auto absorb = [&](const ReactionPair& effect, int memo_idx, int final_reaction) {
        auto& slot = absorbed[effect];
        if (slot.walk_classes == 0) slot.representative = reconstruct(memo_idx, final_reaction);
        slot.walk_classes += 1;
    };

    std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(g.node_count()));
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        out_edges[static_cast<std::size_t>(g.edges[i].from)].push_back(static_cast<int>(i));

    for (int ei : out_edges[0]) {
        const auto& e = g.edges[static_cast<std::size_t>(ei)];
        ReactionPair p = as_pair(net.reactions[static_cast<std::size_t>(e.id)]);
        if (e.to == 0)
            absorb(p, -1, e.id);
        else
            push_state(e.to, p, -1, e.id);
    }
    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        MemoState state = memo[static_cast<std::size_t>(idx)];
        for (int ei : out_edges[static_cast<std::size_t>(state.node)]) {
            const auto& e = g.edges[static_cast<std::size_t>(ei)];
            ReactionPair next = compose(state.acc, as_pair(net.reactions[static_cast<std::size_t>(e.id)]));
            if (e.to == 0)
                absorb(next, idx, e.id);
            else
                push_state(e.to, next, idx, e.id);
        }
    }

    ReducedNetwork rn;
    rn.graph = std::move(g);
    for (int s = 0; s < net.species_count(); ++s)
        if (std::find(tagged.begin(), tagged.end(), s) == tagged.end()) rn.core_species.push_back(s);

    std::set<int> support;
    for (const auto& [effect, info] : absorbed) {
        WalkSumEntry entry{effect, effect.is_self_pair(), info.walk_classes, info.representative};
        rn.walk_sums.push_back(entry);
        if (!entry.self_pair) {
            rn.reactions.push_back(entry);
            for (std::size_t i = 0; i < effect.need.size(); ++i)
                if (effect.need[i] > 0 || effect.result[i] > 0) support.insert(static_cast<int>(i));
        }
    }
    rn.reduced_support.assign(support.begin(), support.end());
    return rn;
}

ConditionReport analyze_elimination(const Network& net, const std::vector<int>& tagged) {
    ConditionReport report;
    for (int id : tagged) report.tagged_names.push_back(net.species[static_cast<std::size_t>(id)].name);
    report.weakly_reversible = check_weak_reversibility(net);

    EliminationGraph g;
    try {
        g = classify(net, tagged);
    } catch (const NotNonInteracting& e) {
        report.non_interacting = false;
        report.non_interacting_witness = e.witness();
        return report;
    }
    report.non_interacting = true;
    report.intermediates = g.tagged_are_intermediates();

    auto pd = produced_degraded(g);
    for (int v : pd.produced) report.produced.push_back(g.node_name(v));
    for (int v : pd.degraded) report.degraded.push_back(g.node_name(v));
    report.eliminable = pd.eliminable;

    report.condition1 = check_condition1(g);
    report.condition2 = check_condition2(g);
    if (report.condition1.holds && !(report.condition2.part_i && report.condition2.part_ii))
        throw InternalError("zero-effect cycles cannot produce a signed cone certificate");
    return report;
}

}  // namespace crn
