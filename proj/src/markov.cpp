#include "crn/markov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "crn/errors.hpp"
#include "crn/linalg.hpp"

namespace crn {

bool StateBound::contains(const State& x) const {
    if (box) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > (*box)[i]) return false;
    }
    if (total && vec::total(x) > *total) return false;
    return true;
}

StateBound StateBound::boxed(Counts b) {
    StateBound out;
    out.box = std::move(b);
    return out;
}

StateBound StateBound::total_budget(long long t) {
    StateBound out;
    out.total = t;
    return out;
}

int ComponentSet::index_of(const State& x) const {
    auto it = std::lower_bound(states.begin(), states.end(), x);
    if (it == states.end() || *it != x) return -1;
    return static_cast<int>(it - states.begin());
}

namespace {

std::vector<std::vector<int>> in_set_transitions(const StochasticSystem& sys,
                                                 const std::vector<State>& states,
                                                 std::size_t* nonzeros = nullptr) {
    std::map<State, int> index;
    for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> adjacency(states.size());
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (int c = 0; c < sys.channel_count(); ++c) {
            if (!vec::ge(states[i], sys.channel_need(c))) continue;
            if (sys.intensity(c, states[i]) == 0) continue;
            State next = vec::add_delta(states[i], sys.channel_delta(c));
            auto it = index.find(next);
            if (it != index.end()) {
                adjacency[i].push_back(it->second);
                ++nnz;
            }
        }
    }
    if (nonzeros) *nonzeros = nnz;
    return adjacency;
}

std::vector<bool> sweep(const std::vector<std::vector<int>>& adjacency, int start) {
    std::vector<bool> seen(adjacency.size(), false);
    std::deque<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adjacency[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                queue.push_back(w);
            }
    }
    return seen;
}

std::vector<std::vector<int>> reversed(const std::vector<std::vector<int>>& adjacency) {
    std::vector<std::vector<int>> out(adjacency.size());
    for (std::size_t v = 0; v < adjacency.size(); ++v)
        for (int w : adjacency[v]) out[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
    return out;
}

}  // namespace

ComponentSet irreducible_component(const StochasticSystem& sys, const State& seed,
                                   const StateBound& bound, bool assume_mutual_reachability) {
    if (static_cast<int>(seed.size()) != sys.species_count())
        throw UsageError("irreducible_component: seed has the wrong length");
    if (!vec::all_nonnegative(seed)) throw UsageError("irreducible_component: negative seed counts");
    if (!bound.contains(seed)) throw BoundExceeded("seed state lies outside the bound");

    ComponentSet comp;
    std::set<State> visited{seed};
    std::deque<State> queue{seed};
    bool exceeded = false;
    while (!queue.empty()) {
        State x = std::move(queue.front());
        queue.pop_front();
        for (int c = 0; c < sys.channel_count(); ++c) {
            if (!vec::ge(x, sys.channel_need(c))) continue;
            if (sys.intensity(c, x) == 0) continue;
            State next = vec::add_delta(x, sys.channel_delta(c));
            if (!bound.contains(next)) {
                exceeded = true;
                continue;
            }
            if (visited.insert(next).second) {
                if (visited.size() > bound.max_states)
                    throw BoundExceeded("state closure exceeded " + std::to_string(bound.max_states) +
                                        " states");
                queue.push_back(next);
            }
        }
    }
    comp.states.assign(visited.begin(), visited.end());
    comp.bound_exceeded = exceeded;
    comp.closed = !exceeded;

    auto adjacency = in_set_transitions(sys, comp.states, &comp.generator_nonzeros);
    if (assume_mutual_reachability) {
        comp.mutually_reachable = true;
    } else {
        int seed_index = comp.index_of(seed);
        auto back = sweep(reversed(adjacency), seed_index);
        comp.mutually_reachable = std::all_of(back.begin(), back.end(), [](bool b) { return b; });
    }
    return comp;
}

int Distribution::index_of(const State& x) const {
    auto it = std::lower_bound(states.begin(), states.end(), x);
    if (it == states.end() || *it != x) return -1;
    return static_cast<int>(it - states.begin());
}

Rational Distribution::p(const State& x) const {
    int i = index_of(x);
    if (i < 0) return Rational(0);
    if (mode == NumericMode::rational) return exact[static_cast<std::size_t>(i)];
    return Rational(approx[static_cast<std::size_t>(i)]);
}

double Distribution::p_float(const State& x) const {
    int i = index_of(x);
    if (i < 0) return 0.0;
    return mode == NumericMode::rational ? to_double(exact[static_cast<std::size_t>(i)])
                                         : approx[static_cast<std::size_t>(i)];
}

Distribution Distribution::from_weights(std::vector<State> states, std::vector<Rational> weights) {
    Distribution out;
    std::vector<std::size_t> order(states.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return states[a] < states[b]; });
    Rational total(0);
    for (const auto& w : weights) total += w;
    if (total <= 0) throw EmptySlice("weights sum to zero");
    out.states.reserve(states.size());
    out.exact.reserve(states.size());
    for (std::size_t i : order) {
        out.states.push_back(std::move(states[i]));
        out.exact.push_back(weights[i] / total);
    }
    out.normalization = total;
    return out;
}

Distribution stationary_distribution(const StochasticSystem& sys, const ComponentSet& comp,
                                     const SolveOptions& options) {
    if (!comp.closed)
        throw NotClosed("the component is not closed under the dynamics; enlarge the bound");
    const std::size_t n = comp.size();
    if (n == 0) throw UsageError("stationary_distribution: empty component");

    Distribution out;
    out.states = comp.states;
    if (n == 1) {
        out.mode = options.mode;
        if (options.mode == NumericMode::rational)
            out.exact = {Rational(1)};
        else
            out.approx = {1.0};
        return out;
    }

    const bool exact = options.mode == NumericMode::rational && n <= options.rational_max_states;

    // Columns of the generator transposed; the last balance row is redundant
    // (rows of Q^T sum to zero) and carries the normalization instead.
    if (exact) {
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t j = 0; j < n; ++j) {
            for (int c = 0; c < sys.channel_count(); ++c) {
                if (!vec::ge(comp.states[j], sys.channel_need(c))) continue;
                Rational rate = sys.intensity(c, comp.states[j]);
                if (rate == 0) continue;
                State next = vec::add_delta(comp.states[j], sys.channel_delta(c));
                int i = comp.index_of(next);
                if (i < 0)
                    throw NotClosed("transition leaves the component: " + vec::to_string(next));
                a[static_cast<std::size_t>(i)][j] += rate;
                a[j][j] -= rate;
            }
        }
        for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1;
        std::vector<Rational> rhs(n, Rational(0));
        rhs[n - 1] = 1;
        auto solved = solve_linear_rational(std::move(a), std::move(rhs));
        if (!solved)
            throw SingularBeyondNullity("balance equations are degenerate: the set is not irreducible");
        for (const auto& v : *solved)
            if (v <= 0)
                throw SingularBeyondNullity("balance solution is not strictly positive: not irreducible");
        out.mode = NumericMode::rational;
        out.exact = std::move(*solved);
        return out;
    }

    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (int c = 0; c < sys.channel_count(); ++c) {
            if (!vec::ge(comp.states[j], sys.channel_need(c))) continue;
            Rational rate = sys.intensity(c, comp.states[j]);
            if (rate == 0) continue;
            State next = vec::add_delta(comp.states[j], sys.channel_delta(c));
            int i = comp.index_of(next);
            if (i < 0) throw NotClosed("transition leaves the component: " + vec::to_string(next));
            a[static_cast<std::size_t>(i)][j] += to_double(rate);
            a[j][j] -= to_double(rate);
        }
    }
    auto backup = a;
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    std::vector<double> rhs(n, 0.0);
    rhs[n - 1] = 1.0;
    auto solved = solve_linear_double(std::move(a), std::move(rhs));
    if (!solved)
        throw SingularBeyondNullity("balance equations are degenerate: the set is not irreducible");
    double residual = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += backup[i][j] * (*solved)[j];
        residual = std::max(residual, std::abs(acc));
    }
    if (residual > options.float_residual)
        throw SingularBeyondNullity("float balance solve failed the residual check");
    for (auto& v : *solved)
        if (v < 0 && v > -options.float_residual) v = 0.0;
    for (double v : *solved)
        if (v < 0) throw SingularBeyondNullity("balance solution is not nonnegative: not irreducible");
    out.mode = NumericMode::floating;
    out.approx = std::move(*solved);
    return out;
}

namespace {

Rational prob_of(const Distribution& dist, const State& x) { return dist.p(x); }

void record(Residual& slot, const Rational& value) {
    Rational a = rational_abs(value);
    if (a > slot.exact) {
        slot.exact = a;
        slot.approx = to_double(a);
    }
}

}  // namespace

StationaryCheck check_stationary(const StochasticSystem& sys, const ComponentSet& comp,
                                 const Distribution& dist) {
    StationaryCheck out;
    out.max_residual.exact_mode = dist.mode == NumericMode::rational;
    out.max_interior_residual.exact_mode = out.max_residual.exact_mode;
    out.states = comp.size();
    for (const State& x : comp.states) {
        Rational lhs(0), rhs(0);
        bool interior = true;
        for (int c = 0; c < sys.channel_count(); ++c) {
            lhs += sys.intensity(c, x);
            State source = vec::sub(x, sys.channel_delta(c));
            if (!vec::all_nonnegative(source)) continue;
            Rational in_rate = vec::ge(source, sys.channel_need(c)) ? sys.intensity(c, source) : Rational(0);
            if (in_rate == 0) continue;
            if (comp.index_of(source) < 0) {
                interior = false;  // positive inflow from outside the window
                continue;
            }
            rhs += prob_of(dist, source) * in_rate;
        }
        Rational residual = prob_of(dist, x) * lhs - rhs;
        record(out.max_residual, residual);
        if (interior) {
            ++out.interior_states;
            record(out.max_interior_residual, residual);
        }
    }
    return out;
}

ComplexBalanceCheck check_complex_balance(const StochasticSystem& sys, const ComponentSet& comp,
                                          const Distribution& dist) {
    ComplexBalanceCheck out;
    const bool exact_mode = dist.mode == NumericMode::rational;
    out.max_residual.exact_mode = exact_mode;
    out.max_interior_residual.exact_mode = exact_mode;

    std::vector<Complex> complexes;
    std::set<Complex> seen;
    for (int c = 0; c < sys.channel_count(); ++c) {
        if (seen.insert(sys.channel_need(c)).second) complexes.push_back(sys.channel_need(c));
        Complex result = sys.channel_result(c);
        if (seen.insert(result).second) complexes.push_back(result);
    }

    for (const Complex& target : complexes) {
        ComplexBalanceCheck::PerComplex item;
        item.complex = target;
        item.label = vec::to_string(target);
        item.max_residual.exact_mode = exact_mode;
        item.max_interior_residual.exact_mode = exact_mode;

        std::vector<int> outgoing, incoming;
        for (int c = 0; c < sys.channel_count(); ++c) {
            if (sys.channel_need(c) == target) outgoing.push_back(c);
            if (sys.channel_result(c) == target) incoming.push_back(c);
        }
        for (const State& x : comp.states) {
            Rational lhs(0), rhs(0);
            bool interior = true;
            for (int c : outgoing) lhs += sys.intensity(c, x);
            lhs *= prob_of(dist, x);
            for (int c : incoming) {
                State source = vec::sub(x, sys.channel_delta(c));
                if (!vec::all_nonnegative(source)) continue;
                Rational in_rate =
                    vec::ge(source, sys.channel_need(c)) ? sys.intensity(c, source) : Rational(0);
                if (in_rate == 0) continue;
                if (comp.index_of(source) < 0) {
                    interior = false;
                    continue;
                }
                rhs += prob_of(dist, source) * in_rate;
            }
            Rational residual = lhs - rhs;
            record(item.max_residual, residual);
            record(out.max_residual, residual);
            if (interior) {
                record(item.max_interior_residual, residual);
                record(out.max_interior_residual, residual);
            }
        }
        out.items.push_back(std::move(item));
    }
    return out;
}

DetailedBalanceCheck check_detailed_balance(const StochasticSystem& sys, const ComponentSet& comp,
                                            const Distribution& dist) {
    DetailedBalanceCheck out;
    const bool exact_mode = dist.mode == NumericMode::rational;
    out.max_residual.exact_mode = exact_mode;

    std::map<std::pair<Complex, Delta>, int> lookup;
    for (int c = 0; c < sys.channel_count(); ++c)
        lookup[{sys.channel_need(c), sys.channel_delta(c)}] = c;
    std::vector<int> reverse_of(static_cast<std::size_t>(sys.channel_count()), -1);
    for (int c = 0; c < sys.channel_count(); ++c) {
        Delta back = sys.channel_delta(c);
        for (auto& v : back) v = -v;
        auto it = lookup.find({sys.channel_result(c), back});
        if (it == lookup.end())
            throw NotReversible("channel " + sys.channel_label(c) + " has no reverse channel");
        reverse_of[static_cast<std::size_t>(c)] = it->second;
    }

    for (int c = 0; c < sys.channel_count(); ++c) {
        int rev = reverse_of[static_cast<std::size_t>(c)];
        if (rev < c) continue;  // one check per reversible pair
        DetailedBalanceCheck::PerPair item;
        item.forward_channel = c;
        item.backward_channel = rev;
        item.label = sys.channel_label(c);
        item.max_residual.exact_mode = exact_mode;
        for (const State& x : comp.states) {
            State partner = vec::add_delta(x, sys.channel_delta(c));
            if (!vec::all_nonnegative(partner) || comp.index_of(partner) < 0) {
                if (vec::ge(x, sys.channel_need(c)) && sys.intensity(c, x) != 0) ++out.boundary_skipped;
                continue;
            }
            Rational forward =
                vec::ge(x, sys.channel_need(c)) ? sys.intensity(c, x) : Rational(0);
            Rational backward =
                vec::ge(partner, sys.channel_need(rev)) ? sys.intensity(rev, partner) : Rational(0);
            Rational residual = prob_of(dist, x) * forward - prob_of(dist, partner) * backward;
            ++out.pairs_checked;
            record(item.max_residual, residual);
            record(out.max_residual, residual);
        }
        out.items.push_back(std::move(item));
    }
    return out;
}

Distribution product_form_distribution(const std::vector<Rational>& c, const ComponentSet& comp,
                                       NumericMode mode) {
    for (const auto& v : c)
        if (v <= 0) throw UsageError("product form needs strictly positive parameters");
    if (comp.size() == 0) throw UsageError("product form over an empty component");

    if (mode == NumericMode::rational) {
        long long worst = 0;
        for (const State& x : comp.states) worst = std::max(worst, vec::total(x));
        if (worst > 20000 || comp.size() > 2000000)
            throw OverflowGuard("component too large for exact factorial weights; use float mode");
        std::vector<Rational> weights;
        weights.reserve(comp.size());
        for (const State& x : comp.states) {
            Rational w(1);
            for (std::size_t i = 0; i < x.size(); ++i) {
                w *= rational_pow(c[i], x[i]);
                w /= Rational(factorial(x[i]));
            }
            weights.push_back(std::move(w));
        }
        return Distribution::from_weights(comp.states, std::move(weights));
    }

    std::vector<double> logw;
    logw.reserve(comp.size());
    double top = -std::numeric_limits<double>::infinity();
    for (const State& x : comp.states) {
        double acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            acc += static_cast<double>(x[i]) * std::log(to_double(c[i]));
            acc -= std::lgamma(static_cast<double>(x[i]) + 1.0);
        }
        logw.push_back(acc);
        top = std::max(top, acc);
    }
    double total = 0;
    for (double v : logw) total += std::exp(v - top);
    Distribution out;
    out.states = comp.states;
    out.mode = NumericMode::floating;
    out.approx.reserve(comp.size());
    for (double v : logw) out.approx.push_back(std::exp(v - top) / total);
    return out;
}

std::vector<std::pair<std::string, Rational>> deterministic_complex_balance_residuals(
    const Network& net, const std::vector<Rational>& c) {
    if (static_cast<int>(c.size()) != net.species_count())
        throw UsageError("equilibrium vector has the wrong length");
    for (const auto& rx : net.reactions)
        if (!std::holds_alternative<MassAction>(rx.kinetics))
            throw UsageError("deterministic balance check requires mass-action kinetics");

    auto monomial = [&](const Complex& y) {
        Rational m(1);
        for (std::size_t i = 0; i < y.size(); ++i) m *= rational_pow(c[i], y[i]);
        return m;
    };

    std::vector<std::pair<std::string, Rational>> out;
    for (const Complex& target : net.complexes()) {
        Rational outflow(0), inflow(0);
        for (const auto& rx : net.reactions) {
            const Rational& k = std::get<MassAction>(rx.kinetics).rate;
            if (rx.reactant == target) outflow += k * monomial(target);
            if (rx.product == target) inflow += k * monomial(rx.reactant);
        }
        out.emplace_back(net.complex_to_string(target), outflow - inflow);
    }
    return out;
}

std::optional<std::vector<Rational>> find_complex_balance_equilibrium(const Network& net,
                                                                      int max_rounds) {
    const int n = net.species_count();
    for (const auto& rx : net.reactions)
        if (!std::holds_alternative<MassAction>(rx.kinetics)) return std::nullopt;

    std::vector<double> c(static_cast<std::size_t>(n), 1.0);
    auto flows = [&](const std::vector<double>& conc) {
        std::vector<double> produced(static_cast<std::size_t>(n), 0.0),
            consumed(static_cast<std::size_t>(n), 0.0);
        for (const auto& rx : net.reactions) {
            double rate = to_double(std::get<MassAction>(rx.kinetics).rate);
            for (int i = 0; i < n; ++i)
                for (long long k = 0; k < rx.reactant[static_cast<std::size_t>(i)]; ++k)
                    rate *= conc[static_cast<std::size_t>(i)];
            for (int i = 0; i < n; ++i) {
                produced[static_cast<std::size_t>(i)] +=
                    rate * static_cast<double>(rx.product[static_cast<std::size_t>(i)]);
                consumed[static_cast<std::size_t>(i)] +=
                    rate * static_cast<double>(rx.reactant[static_cast<std::size_t>(i)]);
            }
        }
        return std::make_pair(produced, consumed);
    };

    for (int round = 0; round < max_rounds; ++round) {
        auto [produced, consumed] = flows(c);
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            double p = produced[static_cast<std::size_t>(i)], q = consumed[static_cast<std::size_t>(i)];
            if (p <= 0 || q <= 0) return std::nullopt;  // some species only made or only used
            worst = std::max(worst, std::abs(p / q - 1.0));
            c[static_cast<std::size_t>(i)] *= std::sqrt(p / q);
        }
        if (worst < 1e-14) break;
    }

    // The equilibrium is only determined up to the conserved directions, so
    // normalize by the first coordinate before snapping to small rationals
    // (continued fractions). Only an exactly balanced point is accepted.
    double scale = c[0];
    if (!(scale > 0)) return std::nullopt;
    auto snap = [](double target) -> std::optional<Rational> {
        long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double frac = target;
        for (int k = 0; k < 40; ++k) {
            long long whole = static_cast<long long>(std::floor(frac));
            long long p2 = whole * p1 + p0, q2 = whole * q1 + q0;
            if (q2 > 1000000 || q2 <= 0) break;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            double err = std::abs(target - static_cast<double>(p1) / static_cast<double>(q1));
            if (err < 1e-10 * std::max(1.0, std::abs(target))) {
                if (p1 <= 0) return std::nullopt;
                return Rational(p1, q1);
            }
            double rem = frac - static_cast<double>(whole);
            if (rem < 1e-15) break;
            frac = 1.0 / rem;
        }
        return std::nullopt;
    };
    std::vector<Rational> snapped(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto r = snap(c[static_cast<std::size_t>(i)] / scale);
        if (!r) return std::nullopt;
        snapped[static_cast<std::size_t>(i)] = *r;
    }
    for (const auto& [label, residual] : deterministic_complex_balance_residuals(net, snapped))
        if (residual != 0) return std::nullopt;
    return snapped;
}

Distribution conditional_distribution(const Distribution& dist,
                                      const std::function<bool(const State&)>& keep) {
    std::vector<State> states;
    std::vector<Rational> weights;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (!keep(dist.states[i])) continue;
        states.push_back(dist.states[i]);
        weights.push_back(dist.mode == NumericMode::rational ? dist.exact[i]
                                                             : Rational(dist.approx[i]));
    }
    if (states.empty()) throw EmptySlice("conditioning event has probability zero");
    Distribution out = Distribution::from_weights(std::move(states), std::move(weights));
    if (dist.mode == NumericMode::floating) {
        out.mode = NumericMode::floating;
        out.approx.reserve(out.exact.size());
        for (const auto& v : out.exact) out.approx.push_back(to_double(v));
        out.exact.clear();
    }
    return out;
}

Distribution conditional_distribution(const Distribution& dist, const std::vector<State>& slice) {
    std::set<State> keep(slice.begin(), slice.end());
    return conditional_distribution(dist, [&](const State& x) { return keep.count(x) > 0; });
}

Rational probability_of(const Distribution& dist, const std::function<bool(const State&)>& keep) {
    Rational total(0);
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (keep(dist.states[i]))
            total += dist.mode == NumericMode::rational ? dist.exact[i] : Rational(dist.approx[i]);
    return total;
}

std::vector<ComponentSet> decompose_components(const StochasticSystem& sys,
                                               const std::vector<State>& states) {
    std::vector<State> sorted = states;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    auto adjacency = in_set_transitions(sys, sorted);
    const std::size_t n = sorted.size();

    // Kosaraju: order by finish time, then sweep the reversed graph.
    std::vector<int> order;
    order.reserve(n);
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [v, child] = stack.back();
            if (child < adjacency[static_cast<std::size_t>(v)].size()) {
                int w = adjacency[static_cast<std::size_t>(v)][child++];
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    auto rev = reversed(adjacency);
    std::vector<int> component(n, -1);
    int groups = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (component[static_cast<std::size_t>(*it)] != -1) continue;
        std::deque<int> queue{*it};
        component[static_cast<std::size_t>(*it)] = groups;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : rev[static_cast<std::size_t>(v)])
                if (component[static_cast<std::size_t>(w)] == -1) {
                    component[static_cast<std::size_t>(w)] = groups;
                    queue.push_back(w);
                }
        }
        ++groups;
    }

    std::vector<ComponentSet> out(static_cast<std::size_t>(groups));
    for (std::size_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(component[i])].states.push_back(sorted[i]);
    for (auto& comp : out) {
        std::sort(comp.states.begin(), comp.states.end());
        comp.mutually_reachable = true;
        comp.closed = true;
        for (const State& x : comp.states) {
            for (int c = 0; c < sys.channel_count() && comp.closed; ++c) {
                if (!vec::ge(x, sys.channel_need(c))) continue;
                if (sys.intensity(c, x) == 0) continue;
                State next = vec::add_delta(x, sys.channel_delta(c));
                if (comp.index_of(next) < 0) comp.closed = false;
            }
            if (!comp.closed) break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ComponentSet& a, const ComponentSet& b) { return a.states < b.states; });
    return out;
}

std::vector<Rational> mixture_weights(const Distribution& dist,
                                      const std::vector<ComponentSet>& classes) {
    std::vector<Rational> out;
    out.reserve(classes.size());
    for (const auto& cls : classes)
        out.push_back(probability_of(dist, [&](const State& x) { return cls.contains(x); }));
    return out;
}

Rational tv_distance(const Distribution& a, const Distribution& b) {
    std::set<State> support(a.states.begin(), a.states.end());
    support.insert(b.states.begin(), b.states.end());
    Rational total(0);
    for (const State& x : support) total += rational_abs(a.p(x) - b.p(x));
    return total / 2;
}

Distribution marginal(const Distribution& dist, const std::vector<int>& keep) {
    std::map<State, Rational> acc;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        State projected;
        projected.reserve(keep.size());
        for (int k : keep) projected.push_back(dist.states[i][static_cast<std::size_t>(k)]);
        acc[projected] += dist.mode == NumericMode::rational ? dist.exact[i] : Rational(dist.approx[i]);
    }
    std::vector<State> states;
    std::vector<Rational> weights;
    for (auto& [s, w] : acc) {
        states.push_back(s);
        weights.push_back(w);
    }
    Distribution out = Distribution::from_weights(std::move(states), std::move(weights));
    if (dist.mode == NumericMode::floating) {
        out.mode = NumericMode::floating;
        for (const auto& v : out.exact) out.approx.push_back(to_double(v));
        out.exact.clear();
    }
    return out;
}

}  // namespace crn
