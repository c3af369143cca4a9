#include "doctest.h"

#include "crn/errors.hpp"
#include "crn/scaling.hpp"
#include "support.hpp"

using namespace crn;

namespace {

struct Fixture {
    NetworkDocument doc;
    ComponentSet comp;
    Distribution pi;
    std::vector<int> tagged;
};

Fixture chain_fixture(long long total = 2) {
    Fixture f;
    f.doc = testing::abu_chain();
    NetworkSystem sys(f.doc.net);
    State seed(3, 0);
    seed[0] = total;
    f.comp = irreducible_component(sys, seed, StateBound::total_budget(total));
    f.pi = stationary_distribution(sys, f.comp);
    f.tagged = {2};
    return f;
}

}  // namespace

TEST_CASE("kinetics scaling multiplies tagged-source rates") {
    auto doc = testing::abu_chain();
    ScalingSpec spec{{Rational(1)}, 10};
    Network scaled = scale_kinetics(doc.net, {2}, spec);
    CHECK(eval_intensity(scaled, 0, {1, 0, 0}) == Rational(1));    // A -> U untouched
    CHECK(eval_intensity(scaled, 1, {0, 0, 1}) == Rational(20));   // 2 x_U times 10
    CHECK(eval_intensity(scaled, 2, {0, 0, 1}) == Rational(20));
    CHECK(eval_intensity(scaled, 3, {0, 1, 0}) == Rational(3));    // B -> U untouched

    Network identity = scale_kinetics(doc.net, {2}, {{Rational(1)}, 1});
    for (std::size_t r = 0; r < doc.net.reactions.size(); ++r)
        CHECK(kinetics_equal(identity.reactions[r].kinetics, doc.net.reactions[r].kinetics));

    Network squared = scale_kinetics(doc.net, {2}, {{Rational(2)}, 10});
    CHECK(eval_intensity(squared, 1, {0, 0, 1}) == Rational(200));  // factor 10^2

    // expression kinetics get the factor folded into the expression
    auto loop = testing::factorial_loop();
    Network scaled_loop = scale_kinetics(loop.net, {1}, {{Rational(1)}, 3});
    CHECK(eval_intensity(scaled_loop, 1, {1, 1}) == Rational(12));  // 3 * (2!)^2
    CHECK(eval_intensity(scaled_loop, 0, {1, 0}) == Rational(1));   // core-sourced
    auto reparsed = parse_network(serialize_network({scaled_loop, true, {}, {}}));
    CHECK(eval_intensity(reparsed.net, 1, {1, 1}) == Rational(12));  // scaled source survives
}

TEST_CASE("fractional scaling levels are rejected") {
    auto doc = testing::abu_chain();
    CHECK_THROWS_AS(scaling_level({2}, {Rational(1, 2)}, State{0, 0, 1}), UsageError);
    CHECK(scaling_level({2}, {Rational(1, 2)}, State{0, 0, 2}) == 1);
    CHECK_THROWS_AS(scale_kinetics(doc.net, {2}, {{Rational(0)}, 2}), UsageError);
}

TEST_CASE("scaled distribution dampens tagged states and stays balanced") {
    auto f = chain_fixture();
    ScalingSpec spec{{Rational(1)}, 3};
    auto scaled = scaled_distribution(f.doc.net, f.tagged, spec, f.comp, f.pi);

    // weights 18, 12, 2, 6, 2, 1/2 against the unscaled 18, 12, 2, 18, 6, 9/2
    Rational total = Rational(18 + 12 + 2 + 6 + 2) + Rational(1, 2);
    CHECK(scaled.mass == total / Rational(121, 2));
    CHECK(scaled.dist.p(State{2, 0, 0}) == Rational(18) / total);
    CHECK(scaled.dist.p(State{1, 0, 1}) == Rational(6) / total);
    CHECK(scaled.dist.p(State{0, 0, 2}) == Rational(1, 2) / total);

    auto unscaled = scaled_distribution(f.doc.net, f.tagged, {{Rational(1)}, 1}, f.comp, f.pi);
    CHECK(unscaled.mass == 1);
    CHECK(unscaled.dist.exact == f.pi.exact);

    // feeding a non-balanced distribution trips the verification
    std::vector<Rational> uniform(f.comp.size(), Rational(1, static_cast<long long>(f.comp.size())));
    Distribution wrong;
    wrong.states = f.comp.states;
    wrong.exact = uniform;
    CHECK_THROWS_AS(scaled_distribution(f.doc.net, f.tagged, spec, f.comp, wrong), UsageError);
}

TEST_CASE("scaled distributions stay complex balanced across factors and exponents") {
    struct Case {
        NetworkDocument doc;
        State seed;
        long long total;
        std::vector<std::vector<Rational>> betas;
    };
    for (auto& c : {Case{testing::abu_chain(), {2, 0, 0}, 2, {{Rational(1)}, {Rational(2)}}},
                    Case{testing::enzyme_reversible(),
                         {1, 1, 1, 0, 0, 0, 0},
                         4,
                         {{Rational(1), Rational(1)}, {Rational(2), Rational(2)},
                          {Rational(1), Rational(2)}}}}) {
        NetworkSystem sys(c.doc.net);
        auto comp = irreducible_component(sys, c.seed, StateBound::total_budget(c.total));
        auto pi = stationary_distribution(sys, comp);
        auto tagged = c.doc.sets.front().second;
        for (const auto& beta : c.betas) {
            for (long long factor : {1LL, 2LL, 3LL, 5LL, 10LL}) {
                ScalingSpec spec{beta, factor};
                auto scaled = scaled_distribution(c.doc.net, tagged, spec, comp, pi, true);
                NetworkSystem snet(scale_kinetics(c.doc.net, tagged, spec));
                CHECK(check_complex_balance(snet, comp, scaled.dist).max_residual.exact == 0);
                CHECK(scaled.mass <= 1);
                if (factor >= 2) CHECK(scaled.mass < 1);
            }
        }
    }
}

TEST_CASE("limit support and argmin invariance") {
    auto f = chain_fixture();
    auto support = limit_support(f.comp.states, f.tagged, {Rational(1)});
    CHECK(support.min_level == 0);
    CHECK(support.argmin == std::vector<State>{{0, 2, 0}, {1, 1, 0}, {2, 0, 0}});

    auto doubled = limit_support(f.comp.states, f.tagged, {Rational(2)});
    CHECK(doubled.min_level == 0);
    CHECK(doubled.argmin == support.argmin);

    // a component where the tagged count cannot reach zero
    auto doc = parse_network("species A U\nA -> 2 U : k=1\n2 U -> A : k=1\n");
    NetworkSystem sys(doc.net);
    auto comp = irreducible_component(sys, {1, 1}, StateBound::total_budget(3));
    auto odd = limit_support(comp.states, {1}, {Rational(1)});
    CHECK(odd.min_level == 1);
    REQUIRE(odd.argmin.size() == 1);
    CHECK(odd.argmin[0] == State{1, 1});

    auto twice = limit_support(comp.states, {1}, {Rational(2)});
    CHECK(twice.min_level == 2);
    CHECK(twice.argmin == odd.argmin);
}

TEST_CASE("the limit distribution is the conditional on the minimum slice") {
    auto f = chain_fixture();
    auto limit = limit_distribution(f.pi, f.tagged, {Rational(1)});
    auto cond = conditional_distribution(f.pi, [](const State& x) { return x[2] == 0; });
    CHECK(limit.states == cond.states);
    CHECK(limit.exact == cond.exact);
    CHECK(limit.p(State{2, 0, 0}) == Rational(9, 16));

    auto whole = limit_distribution(f.pi, f.tagged, {Rational(1)});
    auto self = conditional_distribution(whole, [](const State&) { return true; });
    CHECK(self.exact == whole.exact);
}

TEST_CASE("convergence table marches toward the limit") {
    auto f = chain_fixture();
    std::vector<long long> factors{1, 2, 4, 8, 16};
    auto rows = convergence_table(f.doc.net, f.tagged, {Rational(1)}, f.comp, f.pi, factors, true);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].tv == Rational(57, 121));
    CHECK(rows[1].tv == Rational(105, 361));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].tv < rows[i - 1].tv);

    // the decay approaches one halving per doubling
    Rational late_ratio = rows[3].tv / rows[4].tv;
    CHECK(to_double(late_ratio) > 1.8);
    CHECK(to_double(late_ratio) < 2.05);

    // with a doubled exponent the decay approaches a quartering
    auto rows2 = convergence_table(f.doc.net, f.tagged, {Rational(2)}, f.comp, f.pi, {8, 16, 32}, false);
    Rational quad = rows2[1].tv / rows2[2].tv;
    CHECK(to_double(quad) > 3.5);
    CHECK(to_double(quad) < 4.05);

    // far out the distance is tiny
    auto far = scaled_distribution(f.doc.net, f.tagged, {{Rational(1)}, 1000000}, f.comp, f.pi, false);
    auto limit = limit_distribution(f.pi, f.tagged, {Rational(1)});
    CHECK(to_double(tv_distance(far.dist, limit)) < 1e-5);

    CHECK_THROWS_AS(
        convergence_table(f.doc.net, f.tagged, {Rational(1)}, f.comp, f.pi, {4, 2}, false),
        UsageError);
}

TEST_CASE("capped tables drop the high-level mass and report it") {
    auto f = chain_fixture();
    auto capped =
        convergence_table_capped(f.doc.net, f.tagged, {Rational(1)}, f.comp, f.pi, {1, 2, 4}, 1);
    CHECK(capped.dropped_mass == Rational(9, 121));  // the two-molecule tagged state
    REQUIRE(capped.rows.size() == 3);
    for (std::size_t i = 1; i < capped.rows.size(); ++i)
        CHECK(capped.rows[i].tv < capped.rows[i - 1].tv);

    auto uncut = convergence_table_capped(f.doc.net, f.tagged, {Rational(1)}, f.comp, f.pi, {1, 2}, 10);
    CHECK(uncut.dropped_mass == 0);
}
