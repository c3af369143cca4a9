#pragma once

#include <list>
#include <memory>
#include <unordered_map>

#include "crn/model.hpp"
#include "crn/reduced_kinetics.hpp"

namespace crn {

/// Common view of a jump system: full networks and reduced networks both
/// expose channels with a requirement vector, a jump vector and a
/// state-dependent intensity. Markov analysis and simulation run on this.
class StochasticSystem {
public:
    virtual ~StochasticSystem() = default;

    virtual int species_count() const = 0;
    virtual std::vector<std::string> species_names() const = 0;
    virtual int channel_count() const = 0;
    virtual const Complex& channel_need(int channel) const = 0;
    virtual const Delta& channel_delta(int channel) const = 0;
    virtual Rational intensity(int channel, const State& x) const = 0;
    virtual std::string channel_label(int channel) const = 0;

    Complex channel_result(int channel) const {
        return vec::add_delta(channel_need(channel), channel_delta(channel));
    }
};

class NetworkSystem final : public StochasticSystem {
public:
    explicit NetworkSystem(Network net);

    int species_count() const override { return net_.species_count(); }
    std::vector<std::string> species_names() const override { return net_.species_names(); }
    int channel_count() const override { return net_.reaction_count(); }
    const Complex& channel_need(int channel) const override;
    const Delta& channel_delta(int channel) const override;
    Rational intensity(int channel, const State& x) const override;
    std::string channel_label(int channel) const override { return net_.reaction_to_string(channel); }

    const Network& network() const { return net_; }

private:
    Network net_;
    std::vector<Delta> deltas_;
};

/// Reduced network as a jump system over full-length states with zero tagged
/// counts. Each intensity evaluation is an absorbing-chain solve, so results
/// are cached per state (bounded, least-recently-used eviction). The cache is
/// not synchronized; share instances across threads read-only via NetworkSystem
/// or give each thread its own ReducedSystem.
class ReducedSystem final : public StochasticSystem {
public:
    explicit ReducedSystem(ReducedNetwork rn, ChainOptions options = {}, std::size_t cache_cap = 100000);

    int species_count() const override;
    std::vector<std::string> species_names() const override;
    int channel_count() const override { return static_cast<int>(rn_.reactions.size()); }
    const Complex& channel_need(int channel) const override;
    const Delta& channel_delta(int channel) const override;
    Rational intensity(int channel, const State& x) const override;
    std::string channel_label(int channel) const override;

    const ReducedNetwork& reduced() const { return rn_; }

    /// Indices (into the full species list) of the untagged species.
    const std::vector<int>& core_species() const { return rn_.core_species; }

private:
    const std::map<ReactionPair, Rational>& evaluate(const State& x) const;

    ReducedNetwork rn_;
    ChainOptions options_;
    std::size_t cache_cap_;
    std::vector<Delta> deltas_;

    mutable std::list<std::pair<State, std::map<ReactionPair, Rational>>> lru_;
    mutable std::unordered_map<State, decltype(lru_)::iterator, vec::Hash> cache_;
};

}  // namespace crn
