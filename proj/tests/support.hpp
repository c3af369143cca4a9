#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "crn/elimination.hpp"
#include "crn/parse.hpp"

namespace crn::testing {

inline NetworkDocument abu_chain() {
    return parse_network(
        "species A B U\n"
        "A -> U : k=1\n"
        "U -> A : k=2\n"
        "U -> B : k=2\n"
        "B -> U : k=3\n"
        "set fast = { U }\n");
}

inline NetworkDocument enzyme(const std::string& k1 = "1", const std::string& k2 = "1",
                              const std::string& k3 = "1", const std::string& k4 = "1",
                              const std::string& k5 = "1") {
    return parse_network(
        "species E A B P Q EA EAB\n"
        "E + A -> EA : k=" + k1 + "\n"
        "EA -> E + A : k=" + k2 + "\n"
        "EA + B -> EAB : k=" + k3 + "\n"
        "EAB -> EA + B : k=" + k4 + "\n"
        "EAB -> E + P + Q : k=" + k5 + "\n"
        "set complexes = { EA, EAB }\n");
}

inline NetworkDocument enzyme_reversible() {
    return parse_network(
        "species E A B P Q EA EAB\n"
        "E + A -> EA : k=1\n"
        "EA -> E + A : k=1\n"
        "EA + B -> EAB : k=1\n"
        "EAB -> EA + B : k=1\n"
        "EAB -> E + P + Q : k=1\n"
        "E + P + Q -> EAB : k=1\n"
        "set complexes = { EA, EAB }\n");
}

inline NetworkDocument factorial_loop() {
    return parse_network(
        "species A U\n"
        "A -> U : rate=(A!)^2*ind(A>=1)\n"
        "U -> A : rate=((A+1)!)^2*ind(U>=1)\n"
        "A + U -> U : rate=2*((A+1)!)^2*ind(A>=1,U>=1)\n"
        "U -> A + U : rate=((A+2)!)^2*ind(U>=1)\n"
        "set fast = { U }\n");
}

inline NetworkDocument dimer_exchange() {
    return parse_network(
        "species A B U\n"
        "2 A -> U : k=1\n"
        "U -> 2 A : k=1\n"
        "U -> 2 B : k=1\n"
        "2 B -> U : k=1\n"
        "set fast = { U }\n");
}

inline NetworkDocument skew_cycle() {
    return parse_network(
        "species A B\n"
        "2 A -> A + B : k=1\n"
        "A + B -> 2 B : k=2\n"
        "2 B -> 2 A : k=3\n");
}

/// Random network whose reactions all lie on directed cycles of complexes
/// (hence weakly reversible), with a designated set of species that appear in
/// complexes one molecule at a time. Returned tagged ids index that set.
struct RandomReversibleNet {
    Network net;
    std::vector<int> tagged;
};

inline RandomReversibleNet random_weakly_reversible(std::mt19937_64& gen) {
    for (;;) {
        int core = 1 + static_cast<int>(gen() % 3);
        int m = 1 + static_cast<int>(gen() % 3);
        int n = core + m;

        auto random_complex = [&]() {
            Complex y(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < core; ++i) y[static_cast<std::size_t>(i)] = gen() % 3;
            if (gen() % 2) y[static_cast<std::size_t>(core + static_cast<int>(gen() % m))] = 1;
            return y;
        };

        int pool_size = 3 + static_cast<int>(gen() % 5);
        std::vector<Complex> pool;
        std::set<Complex> seen;
        for (int i = 0; i < pool_size * 3 && static_cast<int>(pool.size()) < pool_size; ++i) {
            Complex y = random_complex();
            if (seen.insert(y).second) pool.push_back(y);
        }
        if (pool.size() < 2) continue;

        std::shuffle(pool.begin(), pool.end(), gen);
        Network net;
        for (int i = 0; i < n; ++i)
            net.species.push_back({i, (i < core ? "S" : "U") + std::to_string(i < core ? i : i - core)});
        std::size_t at = 0;
        while (at < pool.size()) {
            std::size_t len = 2 + gen() % 3;
            len = std::min(len, pool.size() - at);
            if (len < 2) break;  // leftover complex joins no cycle
            for (std::size_t k = 0; k < len; ++k) {
                Reaction rx;
                rx.reactant = pool[at + k];
                rx.product = pool[at + (k + 1) % len];
                rx.kinetics = MassAction{Rational(1 + static_cast<long long>(gen() % 3))};
                net.reactions.push_back(std::move(rx));
            }
            at += len;
        }
        if (net.reactions.empty()) continue;
        if (!validate_network(net).empty()) continue;  // e.g. a species used nowhere

        std::vector<int> tagged;
        for (int i = core; i < n; ++i) tagged.push_back(i);
        return {std::move(net), std::move(tagged)};
    }
}

}  // namespace crn::testing
