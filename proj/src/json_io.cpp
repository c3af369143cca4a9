#include "crn/json_io.hpp"

#include <sstream>

namespace crn {

Json rational_json(const Rational& value) { return format_rational(value); }

namespace {

Json counts_json(const Counts& v) {
    Json out = Json::array();
    for (long long x : v) out.push_back(x);
    return out;
}

}  // namespace

Json distribution_json(const Distribution& dist, const std::vector<std::string>& species) {
    Json out;
    out["species"] = species;
    out["mode"] = dist.mode == NumericMode::rational ? "rational" : "float";
    out["support_size"] = dist.size();
    if (dist.normalization) out["normalization"] = rational_json(*dist.normalization);
    Json entries = Json::array();
    for (std::size_t i = 0; i < dist.size(); ++i) {
        Json e;
        e["state"] = counts_json(dist.states[i]);
        if (dist.mode == NumericMode::rational)
            e["p"] = rational_json(dist.exact[i]);
        else
            e["p"] = dist.approx[i];
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    return out;
}

Json component_json(const ComponentSet& comp) {
    Json out;
    out["size"] = comp.size();
    out["closed"] = comp.closed;
    out["mutually_reachable"] = comp.mutually_reachable;
    out["bound_exceeded"] = comp.bound_exceeded;
    out["generator_nonzeros"] = comp.generator_nonzeros;
    return out;
}

Json walk_json(const EliminationGraph& g, const Walk& walk) {
    Json out;
    Json nodes = Json::array();
    for (int n : walk.nodes) nodes.push_back(g.node_name(n));
    Json reactions = Json::array();
    for (int r : walk.reactions) reactions.push_back(g.net.reaction_to_string(r));
    out["nodes"] = std::move(nodes);
    out["reactions"] = std::move(reactions);
    return out;
}

Json condition_report_json(const ConditionReport& report) {
    Json out;
    out["u_species"] = report.tagged_names;
    out["non_interacting"] = report.non_interacting;
    out["witness_complex"] =
        report.non_interacting_witness ? Json(*report.non_interacting_witness) : Json(nullptr);
    out["u_pro"] = report.produced;
    out["u_deg"] = report.degraded;
    out["eliminable"] = report.eliminable;
    out["weakly_reversible"] = report.weakly_reversible;
    out["intermediates"] = report.intermediates;

    Json c1;
    c1["holds"] = report.condition1.holds;
    c1["witness"] = Json(nullptr);
    if (report.condition1.witness) {
        Json w;
        Json reactions = Json::array();
        for (int r : report.condition1.witness->walk.reactions) reactions.push_back(r);
        w["reactions"] = std::move(reactions);
        w["net_delta"] = counts_json(report.condition1.witness->net_delta);
        c1["witness"] = std::move(w);
    }
    out["condition1"] = std::move(c1);

    auto part_json = [&](bool holds, const std::optional<ConeWitness>& witness) {
        Json part;
        part["holds"] = holds;
        part["witness"] = Json(nullptr);
        if (witness) {
            Json w;
            Json cycles = Json::array();
            for (const auto& [walk, coeff] : witness->combination) {
                Json c;
                Json reactions = Json::array();
                for (int r : walk.reactions) reactions.push_back(r);
                c["reactions"] = std::move(reactions);
                c["coefficient"] = coeff.str();
                cycles.push_back(std::move(c));
            }
            w["cycles"] = std::move(cycles);
            w["combined_delta"] = counts_json(witness->combined_delta);
            part["witness"] = std::move(w);
        }
        return part;
    };
    Json c2;
    c2["part_i"] = part_json(report.condition2.part_i, report.condition2.witness_i);
    c2["part_ii"] = part_json(report.condition2.part_ii, report.condition2.witness_ii);
    out["condition2"] = std::move(c2);
    return out;
}

Json reduced_network_json(const ReducedNetwork& rn) {
    const Network& net = rn.graph.net;
    Json out;
    out["species"] = net.species_names();
    Json tagged = Json::array();
    for (int id : rn.graph.tagged) tagged.push_back(net.species[static_cast<std::size_t>(id)].name);
    out["u_species"] = std::move(tagged);
    Json core = Json::array();
    for (int id : rn.core_species) core.push_back(net.species[static_cast<std::size_t>(id)].name);
    out["core_species"] = std::move(core);
    Json support = Json::array();
    for (int id : rn.reduced_support) support.push_back(net.species[static_cast<std::size_t>(id)].name);
    out["reduced_species"] = std::move(support);

    auto entry_json = [&](const WalkSumEntry& e, bool with_walk) {
        Json j;
        j["need"] = counts_json(e.effect.need);
        j["result"] = counts_json(e.effect.result);
        j["need_str"] = net.complex_to_string(e.effect.need);
        j["result_str"] = net.complex_to_string(e.effect.result);
        j["self_loop"] = e.self_pair;
        j["walk_classes"] = e.walk_classes;
        if (with_walk) j["representative_walk"] = walk_json(rn.graph, e.representative);
        return j;
    };
    Json sums = Json::array();
    for (const auto& e : rn.walk_sums) sums.push_back(entry_json(e, false));
    out["walk_sums"] = std::move(sums);
    Json reactions = Json::array();
    for (const auto& e : rn.reactions) reactions.push_back(entry_json(e, true));
    out["reactions"] = std::move(reactions);
    return out;
}

Json residual_json(const Residual& r) {
    Json out;
    out["exact"] = r.exact_mode;
    out["value"] = rational_json(r.exact);
    out["value_float"] = r.approx;
    return out;
}

Json stationary_check_json(const StationaryCheck& check) {
    Json out;
    out["max_residual"] = residual_json(check.max_residual);
    out["max_interior_residual"] = residual_json(check.max_interior_residual);
    out["states"] = check.states;
    out["interior_states"] = check.interior_states;
    return out;
}

Json complex_balance_json(const ComplexBalanceCheck& check) {
    Json out;
    out["max_residual"] = residual_json(check.max_residual);
    out["max_interior_residual"] = residual_json(check.max_interior_residual);
    Json items = Json::array();
    for (const auto& item : check.items) {
        Json j;
        j["complex"] = item.label;
        j["max_residual"] = residual_json(item.max_residual);
        j["max_interior_residual"] = residual_json(item.max_interior_residual);
        items.push_back(std::move(j));
    }
    out["per_complex"] = std::move(items);
    return out;
}

Json detailed_balance_json(const DetailedBalanceCheck& check) {
    Json out;
    out["max_residual"] = residual_json(check.max_residual);
    out["pairs_checked"] = check.pairs_checked;
    out["boundary_skipped"] = check.boundary_skipped;
    Json items = Json::array();
    for (const auto& item : check.items) {
        Json j;
        j["reaction"] = item.label;
        j["max_residual"] = residual_json(item.max_residual);
        items.push_back(std::move(j));
    }
    out["per_pair"] = std::move(items);
    return out;
}

Json convergence_json(const std::vector<ConvergenceRow>& rows, const LimitSupport& support,
                      const std::vector<std::string>& tagged_names,
                      const std::vector<Rational>& beta) {
    Json out;
    out["u_species"] = tagged_names;
    Json betas = Json::array();
    for (const auto& b : beta) betas.push_back(rational_json(b));
    out["beta"] = std::move(betas);
    out["min_level"] = support.min_level;
    out["limit_support_size"] = support.argmin.size();
    Json table = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["factor"] = row.factor;
        j["mass"] = rational_json(row.mass);
        j["tv"] = rational_json(row.tv);
        j["tv_float"] = to_double(row.tv);
        table.push_back(std::move(j));
    }
    out["rows"] = std::move(table);
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "factor,tv,mass\n";
    for (const auto& row : rows)
        out << row.factor << "," << to_double(row.tv) << "," << to_double(row.mass) << "\n";
    return out.str();
}

Json occupation_json(const Trajectory& traj, const Distribution& occupation,
                     const std::vector<std::string>& species, double burn_in) {
    Json out;
    out["occupation"] = distribution_json(occupation, species);
    out["t_end"] = traj.t_end;
    out["burn_in"] = burn_in;
    out["jumps"] = traj.jumps();
    out["seed"] = traj.seed;
    out["absorbed"] = traj.absorbed;
    out["final_state"] = counts_json(traj.states.back());
    return out;
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& species) {
    std::ostringstream out;
    out << "time";
    for (const auto& s : species) out << "," << s;
    out << "\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        out << traj.times[i];
        for (long long v : traj.states[i]) out << "," << v;
        out << "\n";
    }
    return out.str();
}

}  // namespace crn
