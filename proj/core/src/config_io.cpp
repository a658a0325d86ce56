#include "caraeq/config_io.hpp"

#include <fstream>

namespace caraeq {

namespace {

const char* const kKeys[] = {"N", "m", "F", "alpha", "kappa",
                             "k", "w", "g", "tau", "Lg"};

}  // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("scenario config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw Error("unknown scenario key '" + key + "'");
    if (!value.is_number()) {
      throw Error("scenario key '" + key + "' must be a number");
    }
  }
  for (const char* k : kKeys) {
    if (!j.contains(k)) {
      throw Error(std::string("scenario key '") + k + "' is missing");
    }
  }

  ScenarioConfig cfg;
  cfg.market.N = j.at("N").get<double>();
  cfg.tech.m = j.at("m").get<double>();
  cfg.tech.F = j.at("F").get<double>();
  cfg.utility.alpha = j.at("alpha").get<double>();
  cfg.utility.kappa = j.at("kappa").get<double>();
  cfg.utility.k = j.at("k").get<double>();
  cfg.market.w = j.at("w").get<double>();
  cfg.policy.g = j.at("g").get<double>();
  cfg.policy.tau = j.at("tau").get<double>();
  cfg.policy.Lg = j.at("Lg").get<double>();
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("cannot parse config file '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
  return {{"N", cfg.market.N},       {"m", cfg.tech.m},
          {"F", cfg.tech.F},         {"alpha", cfg.utility.alpha},
          {"kappa", cfg.utility.kappa}, {"k", cfg.utility.k},
          {"w", cfg.market.w},       {"g", cfg.policy.g},
          {"tau", cfg.policy.tau},   {"Lg", cfg.policy.Lg}};
}

nlohmann::json equilibrium_to_json(const SymmetricEquilibrium& eq) {
  return {{"p", eq.p},
          {"q", eq.q},
          {"L", eq.L},
          {"Pi", eq.Pi},
          {"markup", eq.markup},
          {"welfare", eq.welfare},
          {"flags",
           {{"price_positive", eq.flags.price_positive},
            {"markup_positive", eq.flags.markup_positive},
            {"profit_nonnegative", eq.flags.profit_nonnegative},
            {"fixed_cost_within_bound", eq.flags.fixed_cost_within_bound}}}};
}

nlohmann::json propositions_to_json(const PropositionReport& r) {
  return {{"resource_slack_positive", r.resource_slack_positive},
          {"markup_positive", r.markup_positive},
          {"fixed_cost_bound", r.fixed_cost_bound},
          {"fixed_cost_within_bound", r.fixed_cost_within_bound},
          {"profit_nonnegative", r.profit_nonnegative},
          {"bound_implies_profit", r.bound_implies_profit},
          {"employment_residual", r.employment_residual},
          {"employment_identity_ok", r.employment_identity_ok},
          {"all_ok", r.all_ok}};
}

nlohmann::json jacobian_to_json(const PolicyJacobian& jac) {
  nlohmann::json j = {
      {"dL_dg", jac.dL_dg},     {"dL_dtau", jac.dL_dtau},
      {"dL_dLg", jac.dL_dLg},   {"dq_dg", jac.dq_dg},
      {"dq_dtau", jac.dq_dtau}, {"dq_dLg", jac.dq_dLg},
      {"dp_dg", jac.dp_dg},     {"dp_dtau", jac.dp_dtau},
      {"dp_dLg", jac.dp_dLg},   {"dPi_dg", jac.dPi_dg},
      {"dPi_dtau", jac.dPi_dtau}, {"dPi_dLg", jac.dPi_dLg}};
  j["method"] = jac.method == JacobianMethod::analytic ? "analytic"
                                                       : "finite_difference";
  if (jac.method == JacobianMethod::finite_difference) {
    j["stencils"] = {{"g", stencil_name(jac.stencils[0])},
                     {"tau", stencil_name(jac.stencils[1])},
                     {"Lg", stencil_name(jac.stencils[2])}};
  }
  return j;
}

nlohmann::json theorem_report_to_json(const TheoremReport& rep) {
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : rep.claims) {
    nlohmann::json jc = {{"group", c.group},
                         {"claim", c.claim},
                         {"analytic", c.analytic},
                         {"finite_difference", c.fd},
                         {"applicable", c.applicable},
                         {"pass", c.pass}};
    if (!c.note.empty()) jc["note"] = c.note;
    claims.push_back(std::move(jc));
  }
  return {{"claims", claims},
          {"checked", rep.checked},
          {"failed", rep.failed},
          {"all_pass", rep.all_pass()}};
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.market.N = 10.0;
  cfg.market.w = 1.0;
  cfg.tech.m = 1.0;
  cfg.tech.F = 0.1;
  cfg.utility.alpha = 0.5;
  cfg.utility.kappa = 1.0;
  cfg.utility.k = 1.0;
  cfg.policy.g = 1.0;
  cfg.policy.tau = 0.2;
  cfg.policy.Lg = 0.0;
  return cfg;
}

}  // namespace caraeq
