#ifndef CARAEQ_CONFIG_IO_HPP
#define CARAEQ_CONFIG_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "caraeq/closed_form.hpp"
#include "caraeq/comparative_statics.hpp"
#include "caraeq/scenario.hpp"

namespace caraeq {

/// Flat scenario schema: exactly the keys
/// {"N","m","F","alpha","kappa","k","w","g","tau","Lg"}, all numbers.
/// Unknown, missing, or non-numeric keys throw Error (a file-format problem,
/// distinct from model admissibility).
ScenarioConfig scenario_from_json(const nlohmann::json& j);
ScenarioConfig load_scenario_file(const std::string& path);

nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
nlohmann::json equilibrium_to_json(const SymmetricEquilibrium& eq);
nlohmann::json propositions_to_json(const PropositionReport& report);
nlohmann::json jacobian_to_json(const PolicyJacobian& jac);
nlohmann::json theorem_report_to_json(const TheoremReport& report);

/// The documented default scenario (moderate fixed cost, unit purchases).
ScenarioConfig default_scenario();

}  // namespace caraeq

#endif
