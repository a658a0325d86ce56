#ifndef CARAEQ_EXPERIMENTS_HPP
#define CARAEQ_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "caraeq/closed_form.hpp"
#include "caraeq/comparative_statics.hpp"
#include "caraeq/scenario.hpp"

namespace caraeq {

enum class SweepOutput { p, q, L, Pi, welfare, jacobian, theorems };

const char* sweep_output_name(SweepOutput o);
SweepOutput sweep_output_from_name(const std::string& name);

struct SweepSpec {
  ScenarioConfig base;
  Axis axis = Axis::g;
  std::vector<double> grid;
  std::vector<SweepOutput> outputs;
};

struct SweepRow {
  double axis_value = 0.0;
  std::string status;  // "ok" or the validation/solve failure
  std::optional<SymmetricEquilibrium> eq;
  std::optional<PolicyJacobian> jacobian;   // analytic
  std::optional<TheoremReport> theorems;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

/// Evaluates the base scenario at every grid point along one axis. Grid points
/// that fail validation (or solving) produce a row whose status names the
/// point index and reason; the sweep itself never aborts. Throws EmptyGrid.
SweepResult run_sweep(const SweepSpec& spec);

/// CSV with a mandatory header; numeric cells carry 17 significant digits.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::string sweep_csv(const SweepResult& result);

/// JSON run manifest: tool identity, base scenario, axis, grid, requested
/// outputs, and per-row status.
std::string sweep_manifest(const SweepResult& result);

struct PolicyOutcome {
  double dose = 0.0;
  SymmetricEquilibrium eq;
};

/// Equal-employment comparison of the two expenditure instruments.
struct PolicyComparison {
  double target_L = 0.0;
  double baseline_L = 0.0;  // both instruments off
  PolicyOutcome purchases;  // dose in g, Lg = 0
  PolicyOutcome employment; // dose in Lg, g = 0
};

/// Inverts the affine employment map for each instrument separately so both
/// reach target_L exactly, then re-solves and verifies the hit to 1e-10.
/// target_L == baseline returns zero doses; target_L below baseline throws
/// TargetBelowBaseline.
PolicyComparison compare_policies(const ScenarioConfig& base, double target_L);

}  // namespace caraeq

#endif
