#include "doctest.h"

#include <random>

#include "crn/errors.hpp"
#include "support.hpp"

using namespace crn;

namespace {

ReactionPair random_pair(std::mt19937_64& gen, std::size_t n) {
    ReactionPair p;
    p.need.resize(n);
    p.result.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.need[i] = static_cast<long long>(gen() % 4);
        p.result[i] = static_cast<long long>(gen() % 4);
    }
    return p;
}

}  // namespace

TEST_CASE("compose matches the worked example") {
    ReactionPair a{{1, 1, 0}, {0, 0, 1}};  // S1 + S2 -> S3
    ReactionPair b{{0, 1, 1}, {0, 1, 0}};  // S2 + S3 -> S2
    ReactionPair sum = compose(a, b);
    CHECK(sum.need == Complex{1, 2, 0});    // S1 + 2 S2
    CHECK(sum.result == Complex{0, 1, 0});  // S2

    ReactionPair unit{{1}, {1}};
    CHECK(compose(unit, ReactionPair{{0}, {0}}) == unit);

    ReactionPair swap1{{1, 0}, {0, 1}};
    ReactionPair swap2{{0, 1}, {1, 0}};
    CHECK(compose(swap1, swap2) == ReactionPair{{1, 0}, {1, 0}});
}

TEST_CASE("compose_fold") {
    ReactionPair single{{2, 0}, {0, 1}};
    CHECK(compose_fold({single}) == single);
    CHECK_THROWS_AS(compose_fold({}), UsageError);

    auto ez = testing::enzyme();
    auto pair_of = [&](int r) { return as_pair(ez.net.reactions[static_cast<std::size_t>(r)]); };
    // binding then the second binding: E + A + B -> EAB
    ReactionPair two = compose_fold({pair_of(0), pair_of(2)});
    CHECK(ez.net.complex_to_string(two.need) == "E + A + B");
    CHECK(ez.net.complex_to_string(two.result) == "EAB");
    // the full productive path: E + A + B -> E + P + Q
    ReactionPair path = compose_fold({pair_of(0), pair_of(2), pair_of(4)});
    CHECK(ez.net.complex_to_string(path.need) == "E + A + B");
    CHECK(ez.net.complex_to_string(path.result) == "E + P + Q");
}

TEST_CASE("walk sums over the elimination graph") {
    auto ez = testing::enzyme();
    auto g = classify(ez.net, {5, 6});

    Walk bounce{{1, 2, 1}, {2, 3}};  // EA+B -> EAB then back
    ReactionPair sum = g.walk_sum(bounce);
    CHECK(ez.net.complex_to_string(sum.need) == "B + EA");
    CHECK(sum.need == sum.result);

    Walk through{{0, 1, 2, 0}, {0, 2, 4}};
    ReactionPair full = g.walk_sum(through);
    CHECK(ez.net.complex_to_string(full.need) == "E + A + B");
    CHECK(ez.net.complex_to_string(full.result) == "E + P + Q");

    Walk single{{0, 1}, {0}};
    CHECK(g.walk_sum(single) == as_pair(ez.net.reactions[0]));

    Walk bad{{0, 2}, {0}};  // edge 0 goes 0 -> 1, not 0 -> 2
    CHECK_THROWS_AS(g.walk_sum(bad), UsageError);
}

TEST_CASE("compose is associative and additive on deltas") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t n = 1 + gen() % 4;
        ReactionPair a = random_pair(gen, n), b = random_pair(gen, n), c = random_pair(gen, n);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        Delta sum = vec::add_delta(a.delta(), b.delta());
        CHECK(compose(a, b).delta() == sum);
        CHECK(vec::ge(compose(a, b).need, a.need));  // composing never lowers the requirement
    }
}

TEST_CASE("reachability by firing sequences") {
    auto doc = testing::abu_chain();
    CHECK(leads_to(doc.net, {1, 0, 0}, {0, 1, 0}, 1000) == Reach::yes);
    CHECK(leads_to(doc.net, {1, 2, 3}, {1, 2, 3}, 1000) == Reach::yes);  // empty sequence
    CHECK(leads_to(doc.net, {1, 0, 0}, {2, 0, 0}, 1000) == Reach::no);   // conservation
    // the total count is conserved, so everything on the simplex is mutual
    std::mt19937_64 gen(5);
    std::vector<State> simplex;
    for (long long a = 0; a <= 3; ++a)
        for (long long b = 0; a + b <= 3; ++b) simplex.push_back({a, b, 3 - a - b});
    for (int trial = 0; trial < 20; ++trial) {
        const State& from = simplex[gen() % simplex.size()];
        const State& to = simplex[gen() % simplex.size()];
        CHECK(leads_to(doc.net, from, to, 1000) == Reach::yes);
    }

    auto loop = testing::factorial_loop();
    CHECK(leads_to(loop.net, {1, 0}, {30, 0}, 20000) == Reach::yes);
    CHECK(leads_to(loop.net, {30, 0}, {1, 0}, 20000) == Reach::yes);
    // the component is unbounded, so a missing target stays undecided
    CHECK(leads_to(loop.net, {1, 0}, {0, 0}, 2000) == Reach::undecided);
    CHECK(leads_to(loop.net, {1, 0}, {50, 50}, 10) == Reach::undecided);
}
