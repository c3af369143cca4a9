#include "crn/scaling.hpp"

#include <algorithm>

#include "crn/errors.hpp"

namespace crn {

long long scaling_level(const std::vector<int>& tagged, const std::vector<Rational>& beta,
                        const Counts& x) {
    if (tagged.size() != beta.size()) throw UsageError("scaling: beta size mismatch");
    Rational level(0);
    for (std::size_t i = 0; i < tagged.size(); ++i)
        level += beta[i] * Rational(x[static_cast<std::size_t>(tagged[i])]);
    if (denominator(level) != 1)
        throw UsageError("scaling level " + format_rational(level) +
                         " is not an integer; clear the denominators of beta");
    return numerator(level).convert_to<long long>();
}

Network scale_kinetics(const Network& net, const std::vector<int>& tagged, const ScalingSpec& spec) {
    if (spec.factor < 1) throw UsageError("scaling factor must be at least 1");
    for (const auto& b : spec.beta)
        if (b <= 0) throw UsageError("beta exponents must be positive");

    Network scaled = net;
    for (auto& rx : scaled.reactions) {
        long long level = scaling_level(tagged, spec.beta, rx.reactant);
        if (level == 0) continue;
        Rational factor = rational_pow(Rational(spec.factor), level);
        if (auto* ma = std::get_if<MassAction>(&rx.kinetics)) {
            ma->rate *= factor;
        } else {
            auto& ek = std::get<ExprKinetics>(rx.kinetics);
            ek.source = format_rational(factor) + "*(" + ek.source + ")";
            ek.expr = RateExpr::binary(RateExpr::Kind::mul, RateExpr::constant(factor), ek.expr);
        }
    }
    return scaled;
}

ScaledDistribution scaled_distribution(const Network& net, const std::vector<int>& tagged,
                                       const ScalingSpec& spec, const ComponentSet& comp,
                                       const Distribution& pi, bool verify) {
    ScaledDistribution out;
    std::vector<Rational> weights;
    weights.reserve(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) {
        long long level = scaling_level(tagged, spec.beta, pi.states[i]);
        Rational damp = rational_pow(Rational(spec.factor), -level);
        weights.push_back(damp * (pi.mode == NumericMode::rational ? pi.exact[i]
                                                                   : Rational(pi.approx[i])));
    }
    out.dist = Distribution::from_weights(pi.states, std::move(weights));
    out.mass = *out.dist.normalization;
    if (pi.mode == NumericMode::floating) {
        out.dist.mode = NumericMode::floating;
        for (const auto& v : out.dist.exact) out.dist.approx.push_back(to_double(v));
        out.dist.exact.clear();
    } else if (verify) {
        NetworkSystem scaled(scale_kinetics(net, tagged, spec));
        auto balance = check_complex_balance(scaled, comp, out.dist);
        if (!balance.max_residual.is_zero())
            throw UsageError(
                "scaled distribution is not complex balanced; the input distribution was not "
                "complex balanced for the unscaled network");
    }
    return out;
}

LimitSupport limit_support(const std::vector<State>& states, const std::vector<int>& tagged,
                           const std::vector<Rational>& beta) {
    if (states.empty()) throw UsageError("limit_support: empty state set");
    LimitSupport out;
    bool first = true;
    for (const State& x : states) {
        long long level = scaling_level(tagged, beta, x);
        if (first || level < out.min_level) {
            out.min_level = level;
            out.argmin.clear();
            first = false;
        }
        if (level == out.min_level) out.argmin.push_back(x);
    }
    std::sort(out.argmin.begin(), out.argmin.end());
    return out;
}

Distribution limit_distribution(const Distribution& pi, const std::vector<int>& tagged,
                                const std::vector<Rational>& beta) {
    auto support = limit_support(pi.states, tagged, beta);
    return conditional_distribution(pi, support.argmin);
}

std::vector<ConvergenceRow> convergence_table(const Network& net, const std::vector<int>& tagged,
                                              const std::vector<Rational>& beta,
                                              const ComponentSet& comp, const Distribution& pi,
                                              const std::vector<long long>& factors,
                                              bool verify) {
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i] <= factors[i - 1]) throw UsageError("factors must be strictly increasing");
    Distribution limit = limit_distribution(pi, tagged, beta);
    std::vector<ConvergenceRow> rows;
    rows.reserve(factors.size());
    for (long long f : factors) {
        ScalingSpec spec{beta, f};
        auto scaled = scaled_distribution(net, tagged, spec, comp, pi, verify);
        rows.push_back({f, scaled.mass, tv_distance(scaled.dist, limit)});
    }
    return rows;
}

CappedConvergence convergence_table_capped(const Network& net, const std::vector<int>& tagged,
                                           const std::vector<Rational>& beta,
                                           const ComponentSet& comp, const Distribution& pi,
                                           const std::vector<long long>& factors,
                                           long long level_cap) {
    CappedConvergence out;
    out.level_cap = level_cap;
    auto within = [&](const State& x) { return scaling_level(tagged, beta, x) <= level_cap; };
    out.dropped_mass = Rational(1) - probability_of(pi, within);
    Distribution sliced = conditional_distribution(pi, within);

    ComponentSet window;
    window.states = sliced.states;
    window.closed = comp.closed;
    window.bound_exceeded = true;  // the slice is a window by construction
    out.rows = convergence_table(net, tagged, beta, window, sliced, factors, false);
    return out;
}

}  // namespace crn
