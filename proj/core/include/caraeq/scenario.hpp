#ifndef CARAEQ_SCENARIO_HPP
#define CARAEQ_SCENARIO_HPP

#include <string>
#include <vector>

#include "caraeq/errors.hpp"

namespace caraeq {

/// Per-variety utility u(q) = k - kappa * exp(-alpha * q).
struct UtilitySpec {
  double alpha = 0.0;  // absolute curvature, > 0
  double kappa = 1.0;  // scale, > 0
  double k = 1.0;      // satiation level (additive constant)

  bool operator==(const UtilitySpec&) const = default;
};

/// One firm per variety: labor requirement l = F + m * q_total.
struct Technology {
  double m = 0.0;  // marginal labor per unit of output, > 0
  double F = 0.0;  // fixed labor overhead, >= 0

  bool operator==(const Technology&) const = default;
};

struct MarketStructure {
  double N = 0.0;  // mass of varieties/firms, > 1
  double w = 0.0;  // wage (numeraire anchor), > 0

  bool operator==(const MarketStructure&) const = default;
};

/// Fiscal instruments: per-variety purchases g, flat income tax tau,
/// directly provided public employment Lg.
struct Policy {
  double g = 0.0;
  double tau = 0.0;
  double Lg = 0.0;

  bool operator==(const Policy&) const = default;
};

struct ScenarioConfig {
  UtilitySpec utility;
  Technology tech;
  MarketStructure market;
  Policy policy;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Returns every admissibility constraint the config violates, empty if none.
std::vector<std::string> admissibility_violations(const ScenarioConfig& cfg);

/// A scenario that passed validation; downstream code assumes admissibility.
class ValidatedScenario {
 public:
  const ScenarioConfig& config() const { return cfg_; }

  double N() const { return cfg_.market.N; }
  double w() const { return cfg_.market.w; }
  double m() const { return cfg_.tech.m; }
  double F() const { return cfg_.tech.F; }
  double alpha() const { return cfg_.utility.alpha; }
  double kappa() const { return cfg_.utility.kappa; }
  double k() const { return cfg_.utility.k; }
  double g() const { return cfg_.policy.g; }
  double tau() const { return cfg_.policy.tau; }
  double Lg() const { return cfg_.policy.Lg; }

  /// Per-consumer after-tax income (1 - tau) * w.
  double net_income() const { return (1.0 - tau()) * w(); }

 private:
  friend ValidatedScenario validate(const ScenarioConfig&);
  explicit ValidatedScenario(const ScenarioConfig& cfg) : cfg_(cfg) {}
  ScenarioConfig cfg_;
};

/// Strict admissibility check; throws InadmissibleParameters listing every
/// violated constraint.
ValidatedScenario validate(const ScenarioConfig& cfg);

/// Aggregate utility of consuming q of each of the N varieties.
double utility_of_bundle(double q, const UtilitySpec& u, double N);

/// Scenario dimensions addressable by sweeps and finite-difference probes.
enum class Axis { g, tau, Lg, w, N, m, F, alpha };

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& name);  // throws Error on unknown name
double get_axis(const ScenarioConfig& cfg, Axis a);
void set_axis(ScenarioConfig& cfg, Axis a, double value);

}  // namespace caraeq

#endif
