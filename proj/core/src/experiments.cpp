#include "caraeq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "caraeq/config_io.hpp"
#include "caraeq/version.hpp"

namespace caraeq {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

}  // namespace

const char* sweep_output_name(SweepOutput o) {
  switch (o) {
    case SweepOutput::p: return "p";
    case SweepOutput::q: return "q";
    case SweepOutput::L: return "L";
    case SweepOutput::Pi: return "Pi";
    case SweepOutput::welfare: return "welfare";
    case SweepOutput::jacobian: return "jacobian";
    case SweepOutput::theorems: return "theorems";
  }
  return "?";
}

SweepOutput sweep_output_from_name(const std::string& name) {
  for (SweepOutput o :
       {SweepOutput::p, SweepOutput::q, SweepOutput::L, SweepOutput::Pi,
        SweepOutput::welfare, SweepOutput::jacobian, SweepOutput::theorems}) {
    if (name == sweep_output_name(o)) return o;
  }
  throw Error("unknown sweep output '" + name + "'");
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw EmptyGrid("sweep grid is empty");

  const bool want_jacobian =
      std::find(spec.outputs.begin(), spec.outputs.end(),
                SweepOutput::jacobian) != spec.outputs.end();
  const bool want_theorems =
      std::find(spec.outputs.begin(), spec.outputs.end(),
                SweepOutput::theorems) != spec.outputs.end();

  SweepResult result;
  result.spec = spec;
  result.rows.reserve(spec.grid.size());

  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    SweepRow row;
    row.axis_value = spec.grid[i];
    ScenarioConfig cfg = spec.base;
    set_axis(cfg, spec.axis, spec.grid[i]);

    const auto violations = admissibility_violations(cfg);
    if (!violations.empty()) {
      std::ostringstream os;
      os << "grid point " << i << " inadmissible: "
         << join_violations(violations);
      row.status = os.str();
      result.rows.push_back(std::move(row));
      continue;
    }

    try {
      const ValidatedScenario s = validate(cfg);
      row.eq = solve_equilibrium(s);
      if (want_jacobian) row.jacobian = analytic_jacobian(s);
      if (want_theorems) row.theorems = certify_theorems(s);
      row.status = "ok";
    } catch (const Error& e) {
      std::ostringstream os;
      os << "grid point " << i << " failed: " << e.what();
      row.status = os.str();
      row.eq.reset();
      row.jacobian.reset();
      row.theorems.reset();
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  const auto& spec = result.spec;

  out << axis_name(spec.axis) << ",status";
  for (SweepOutput o : spec.outputs) {
    switch (o) {
      case SweepOutput::jacobian:
        for (const char* row : {"dL", "dq", "dp", "dPi"}) {
          for (const char* col : {"dg", "dtau", "dLg"}) {
            out << ',' << row << '_' << col;
          }
        }
        break;
      case SweepOutput::theorems:
        out << ",claims_pass,failed_claims";
        break;
      default:
        out << ',' << sweep_output_name(o);
    }
  }
  out << '\n';

  for (const auto& row : result.rows) {
    out << fmt17(row.axis_value) << ',' << csv_quote(row.status);
    for (SweepOutput o : spec.outputs) {
      switch (o) {
        case SweepOutput::p:
          out << ',' << (row.eq ? fmt17(row.eq->p) : "");
          break;
        case SweepOutput::q:
          out << ',' << (row.eq ? fmt17(row.eq->q) : "");
          break;
        case SweepOutput::L:
          out << ',' << (row.eq ? fmt17(row.eq->L) : "");
          break;
        case SweepOutput::Pi:
          out << ',' << (row.eq ? fmt17(row.eq->Pi) : "");
          break;
        case SweepOutput::welfare:
          out << ',' << (row.eq ? fmt17(row.eq->welfare) : "");
          break;
        case SweepOutput::jacobian:
          for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 3; ++c) {
              out << ','
                  << (row.jacobian ? fmt17(row.jacobian->entry(r, c)) : "");
            }
          }
          break;
        case SweepOutput::theorems: {
          if (row.theorems) {
            std::string failed;
            for (const auto& cl : row.theorems->claims) {
              if (cl.applicable && !cl.pass) {
                if (!failed.empty()) failed += "; ";
                failed += cl.claim;
              }
            }
            out << ',' << (row.theorems->all_pass() ? 1 : 0) << ','
                << csv_quote(failed);
          } else {
            out << ",,";
          }
          break;
        }
      }
    }
    out << '\n';
  }
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  write_sweep_csv(result, os);
  return os.str();
}

std::string sweep_manifest(const SweepResult& result) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["kind"] = "sweep";
  j["base_scenario"] = scenario_to_json(result.spec.base);
  j["axis"] = axis_name(result.spec.axis);
  j["grid"] = result.spec.grid;
  auto outputs = nlohmann::json::array();
  for (SweepOutput o : result.spec.outputs) outputs.push_back(sweep_output_name(o));
  j["outputs"] = outputs;
  auto rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"axis_value", row.axis_value}, {"status", row.status}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

PolicyComparison compare_policies(const ScenarioConfig& base, double target_L) {
  ScenarioConfig zeroed = base;
  zeroed.policy.g = 0.0;
  zeroed.policy.Lg = 0.0;
  const ValidatedScenario baseline = validate(zeroed);
  const double L0 = private_employment(baseline);

  if (!(std::isfinite(target_L))) throw Error("employment target must be finite");
  if (target_L < L0) {
    std::ostringstream os;
    os << "employment target " << target_L
       << " lies below the zero-instrument baseline " << L0;
    throw TargetBelowBaseline(os.str());
  }

  const double N = baseline.N(), m = baseline.m(), alpha = baseline.alpha();
  const double tau = baseline.tau();
  const double den = alpha + (N * m - alpha) * tau;
  const double gap = target_L - L0;

  PolicyComparison cmp;
  cmp.target_L = target_L;
  cmp.baseline_L = L0;
  cmp.purchases.dose = gap * den / (N * N * m * m);
  cmp.employment.dose = gap * den / (N * (1.0 - tau) * m);

  auto resolve = [&](Axis axis, double dose) {
    ScenarioConfig cfg = zeroed;
    set_axis(cfg, axis, dose);
    const auto violations = admissibility_violations(cfg);
    if (!violations.empty()) {
      throw InadmissibleDose("computed dose rejected: " +
                             join_violations(violations));
    }
    const auto eq = solve_equilibrium(validate(cfg));
    const double miss = std::abs(eq.L - target_L) / std::max(1.0, target_L);
    if (miss > 1e-10) {
      std::ostringstream os;
      os << "dose inversion for " << axis_name(axis)
         << " missed the target: wanted " << target_L << ", got " << eq.L;
      throw InternalInconsistency(os.str());
    }
    return eq;
  };

  cmp.purchases.eq = resolve(Axis::g, cmp.purchases.dose);
  cmp.employment.eq = resolve(Axis::Lg, cmp.employment.dose);
  return cmp;
}

}  // namespace caraeq
