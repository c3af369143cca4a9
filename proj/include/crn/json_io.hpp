#pragma once

#include "json.hpp"

#include "crn/elimination.hpp"
#include "crn/markov.hpp"
#include "crn/scaling.hpp"
#include "crn/simulate.hpp"

namespace crn {

using Json = nlohmann::json;

Json rational_json(const Rational& value);  // "p/q" string

Json distribution_json(const Distribution& dist, const std::vector<std::string>& species);
Json component_json(const ComponentSet& comp);
Json condition_report_json(const ConditionReport& report);
Json reduced_network_json(const ReducedNetwork& rn);
Json walk_json(const EliminationGraph& g, const Walk& walk);

Json residual_json(const Residual& r);
Json stationary_check_json(const StationaryCheck& check);
Json complex_balance_json(const ComplexBalanceCheck& check);
Json detailed_balance_json(const DetailedBalanceCheck& check);

Json convergence_json(const std::vector<ConvergenceRow>& rows, const LimitSupport& support,
                      const std::vector<std::string>& tagged_names,
                      const std::vector<Rational>& beta);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

Json occupation_json(const Trajectory& traj, const Distribution& occupation,
                     const std::vector<std::string>& species, double burn_in);
std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& species);

}  // namespace crn
