#include "crn/system.hpp"

#include "crn/errors.hpp"

namespace crn {

NetworkSystem::NetworkSystem(Network net) : net_(std::move(net)) {
    deltas_.reserve(net_.reactions.size());
    for (const auto& rx : net_.reactions) deltas_.push_back(reaction_delta(rx));
}

const Complex& NetworkSystem::channel_need(int channel) const {
    return net_.reactions.at(static_cast<std::size_t>(channel)).reactant;
}

const Delta& NetworkSystem::channel_delta(int channel) const {
    return deltas_.at(static_cast<std::size_t>(channel));
}

Rational NetworkSystem::intensity(int channel, const State& x) const {
    return eval_intensity(net_, channel, x);
}

ReducedSystem::ReducedSystem(ReducedNetwork rn, ChainOptions options, std::size_t cache_cap)
    : rn_(std::move(rn)), options_(options), cache_cap_(cache_cap) {
    deltas_.reserve(rn_.reactions.size());
    for (const auto& e : rn_.reactions) deltas_.push_back(e.effect.delta());
}

int ReducedSystem::species_count() const { return rn_.graph.net.species_count(); }

std::vector<std::string> ReducedSystem::species_names() const { return rn_.graph.net.species_names(); }

const Complex& ReducedSystem::channel_need(int channel) const {
    return rn_.reactions.at(static_cast<std::size_t>(channel)).effect.need;
}

const Delta& ReducedSystem::channel_delta(int channel) const {
    return deltas_.at(static_cast<std::size_t>(channel));
}

std::string ReducedSystem::channel_label(int channel) const {
    return rn_.reaction_to_string(static_cast<std::size_t>(channel));
}

const std::map<ReactionPair, Rational>& ReducedSystem::evaluate(const State& x) const {
    auto hit = cache_.find(x);
    if (hit != cache_.end()) {
        lru_.splice(lru_.begin(), lru_, hit->second);
        return hit->second->second;
    }
    auto values = reduced_intensities(rn_, x, options_);
    lru_.emplace_front(x, std::move(values.by_effect));
    cache_[x] = lru_.begin();
    if (cache_.size() > cache_cap_) {
        cache_.erase(lru_.back().first);
        lru_.pop_back();
    }
    return lru_.front().second;
}

Rational ReducedSystem::intensity(int channel, const State& x) const {
    const auto& effect = rn_.reactions.at(static_cast<std::size_t>(channel)).effect;
    if (!vec::ge(x, effect.need)) return Rational(0);  // skip the solve when infeasible
    const auto& table = evaluate(x);
    auto it = table.find(effect);
    return it == table.end() ? Rational(0) : it->second;
}

}  // namespace crn
