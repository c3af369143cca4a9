#include "doctest.h"

#include <cmath>

#include "crn/errors.hpp"
#include "crn/scaling.hpp"
#include "crn/simulate.hpp"
#include "support.hpp"

using namespace crn;

TEST_CASE("identical seeds give identical trajectories") {
    NetworkSystem sys(testing::abu_chain().net);
    auto a = gillespie(sys, {2, 0, 0}, 50.0, 42);
    auto b = gillespie(sys, {2, 0, 0}, 50.0, 42);
    CHECK(a.times == b.times);
    CHECK(a.states == b.states);
    auto c = gillespie(sys, {2, 0, 0}, 50.0, 43);
    CHECK(a.states != c.states);
}

TEST_CASE("trajectories respect conservation and jump vectors") {
    NetworkSystem sys(testing::abu_chain().net);
    auto traj = gillespie(sys, {2, 0, 0}, 100.0, 7);
    REQUIRE(traj.states.size() > 10);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        CHECK(vec::total(traj.states[i]) == 2);
        if (i > 0) CHECK(traj.times[i] > traj.times[i - 1]);
    }
}

TEST_CASE("absorbing states end the trajectory") {
    auto doc = parse_network("species A B\nA -> B : k=1\n");
    NetworkSystem sys(doc.net);
    auto traj = gillespie(sys, {1, 0}, 1000.0, 5);
    CHECK(traj.absorbed);
    CHECK(traj.states.back() == State{0, 1});

    auto still = gillespie(sys, {0, 3}, 10.0, 5);
    CHECK(still.absorbed);
    CHECK(still.jumps() == 0);
    auto point = empirical_distribution(still, 0.0);
    REQUIRE(point.size() == 1);
    CHECK(point.approx[0] == 1.0);
}

TEST_CASE("occupation weights are sojourn times") {
    Trajectory traj;
    traj.t_end = 10.0;
    traj.seed = 0;
    traj.times = {0.0, 5.0};
    traj.states = {{1, 0}, {0, 1}};
    auto half = empirical_distribution(traj, 0.0);
    CHECK(half.p_float({1, 0}) == doctest::Approx(0.5));
    CHECK(half.p_float({0, 1}) == doctest::Approx(0.5));

    auto tail = empirical_distribution(traj, 8.0);  // only the second state remains
    CHECK(tail.p_float({0, 1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(empirical_distribution(traj, 10.0), UsageError);
}

TEST_CASE("holding times match the total intensity") {
    NetworkSystem sys(testing::abu_chain().net);
    auto traj = gillespie(sys, {2, 0, 0}, 4000.0, 11);
    // collect holding times at one state and compare with 1/total rate
    State probe{2, 0, 0};  // total rate there is x_A = 2
    std::vector<double> holds;
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i)
        if (traj.states[i] == probe) holds.push_back(traj.times[i + 1] - traj.times[i]);
    REQUIRE(holds.size() > 50);
    double mean = 0;
    for (double h : holds) mean += h;
    mean /= static_cast<double>(holds.size());
    double se = 0.5 / std::sqrt(static_cast<double>(holds.size()));  // sd of Exp(2) is 1/2
    CHECK(std::abs(mean - 0.5) < 3 * se);
}

TEST_CASE("the jump cap guards explosions") {
    NetworkSystem sys(testing::abu_chain().net);
    SimOptions opts;
    opts.max_jumps = 10;
    CHECK_THROWS_AS(gillespie(sys, {50, 0, 0}, 1e6, 1, opts), ExplosionGuard);
}

TEST_CASE("reduced simulation settles near the exact distribution") {
    auto doc = testing::abu_chain();
    ReducedSystem reduced(reduce(doc.net, {2}));
    auto comp = irreducible_component(reduced, {2, 0, 0}, StateBound::total_budget(2));
    auto exact = stationary_distribution(reduced, comp);

    auto traj = gillespie(reduced, {2, 0, 0}, 10000.0, 2024);
    auto occupancy = empirical_distribution(traj, 100.0);
    CHECK(to_double(tv_distance(occupancy, exact)) < 0.05);
}

TEST_CASE("fast tagged species spend little time present") {
    auto doc = testing::abu_chain();
    Network fast = scale_kinetics(doc.net, {2}, {{Rational(1)}, 100});
    NetworkSystem sys(fast);
    auto traj = gillespie(sys, {2, 0, 0}, 2000.0, 31);
    auto occupancy = empirical_distribution(traj, 50.0);
    double tagged_mass = 0;
    for (std::size_t i = 0; i < occupancy.size(); ++i)
        if (occupancy.states[i][2] > 0) tagged_mass += occupancy.approx[i];
    CHECK(tagged_mass < 0.05);
}

TEST_CASE("full and reduced occupations approach each other as scaling grows") {
    auto doc = testing::abu_chain();
    ReducedSystem reduced(reduce(doc.net, {2}));
    auto comp = irreducible_component(reduced, {2, 0, 0}, StateBound::total_budget(2));
    auto target = marginal(stationary_distribution(reduced, comp), {0, 1});

    auto core_occupation = [&](long long factor) {
        Network net = scale_kinetics(doc.net, {2}, {{Rational(1)}, factor});
        NetworkSystem sys(net);
        auto traj = gillespie(sys, {2, 0, 0}, 4000.0, 555);
        return marginal(empirical_distribution(traj, 100.0), {0, 1});
    };
    double off = to_double(tv_distance(core_occupation(1), target));
    double close = to_double(tv_distance(core_occupation(100), target));
    CHECK(close < off);
    CHECK(close < 0.05);
}
