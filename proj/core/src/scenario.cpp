#include "caraeq/scenario.hpp"

#include <cmath>
#include <sstream>

namespace caraeq {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> admissibility_violations(const ScenarioConfig& cfg) {
  std::vector<std::string> out;
  auto bad = [&](bool cond, const std::string& msg) {
    if (cond) out.push_back(msg);
  };

  const double N = cfg.market.N, w = cfg.market.w;
  const double m = cfg.tech.m, F = cfg.tech.F;
  const double alpha = cfg.utility.alpha, kappa = cfg.utility.kappa;
  const double g = cfg.policy.g, tau = cfg.policy.tau, Lg = cfg.policy.Lg;

  bad(!(std::isfinite(N) && N > 1.0), "N must exceed 1 (got " + num(N) + ")");
  bad(!(std::isfinite(m) && m > 0.0), "m must be positive (got " + num(m) + ")");
  bad(!(std::isfinite(F) && F >= 0.0), "F must be nonnegative (got " + num(F) + ")");
  bad(!(std::isfinite(alpha) && alpha > 0.0),
      "alpha must be positive (got " + num(alpha) + ")");
  bad(!(std::isfinite(kappa) && kappa > 0.0),
      "kappa must be positive (got " + num(kappa) + ")");
  bad(!std::isfinite(cfg.utility.k), "k must be finite");
  bad(!(std::isfinite(w) && w > 0.0), "w must be positive (got " + num(w) + ")");
  bad(!(std::isfinite(g) && g >= 0.0), "g must be nonnegative (got " + num(g) + ")");
  bad(!(std::isfinite(tau) && tau >= 0.0 && tau < 1.0),
      "tau must lie in [0,1) (got " + num(tau) + ")");
  bad(!(std::isfinite(Lg) && Lg >= 0.0),
      "Lg must be nonnegative (got " + num(Lg) + ")");
  if (std::isfinite(N) && std::isfinite(m) && std::isfinite(alpha) &&
      !(N * m > alpha)) {
    out.push_back("N*m must exceed alpha (got N*m = " + num(N * m) +
                  ", alpha = " + num(alpha) + ")");
  }
  return out;
}

ValidatedScenario validate(const ScenarioConfig& cfg) {
  auto violations = admissibility_violations(cfg);
  if (!violations.empty()) {
    std::string what = "inadmissible scenario:";
    for (const auto& v : violations) what += "\n  - " + v;
    throw InadmissibleParameters(what, std::move(violations));
  }
  return ValidatedScenario(cfg);
}

double utility_of_bundle(double q, const UtilitySpec& u, double N) {
  return N * (u.k - u.kappa * std::exp(-u.alpha * q));
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::g: return "g";
    case Axis::tau: return "tau";
    case Axis::Lg: return "Lg";
    case Axis::w: return "w";
    case Axis::N: return "N";
    case Axis::m: return "m";
    case Axis::F: return "F";
    case Axis::alpha: return "alpha";
  }
  return "?";
}

Axis axis_from_name(const std::string& name) {
  for (Axis a : {Axis::g, Axis::tau, Axis::Lg, Axis::w, Axis::N, Axis::m,
                 Axis::F, Axis::alpha}) {
    if (name == axis_name(a)) return a;
  }
  throw Error("unknown axis '" + name + "'");
}

double get_axis(const ScenarioConfig& cfg, Axis a) {
  switch (a) {
    case Axis::g: return cfg.policy.g;
    case Axis::tau: return cfg.policy.tau;
    case Axis::Lg: return cfg.policy.Lg;
    case Axis::w: return cfg.market.w;
    case Axis::N: return cfg.market.N;
    case Axis::m: return cfg.tech.m;
    case Axis::F: return cfg.tech.F;
    case Axis::alpha: return cfg.utility.alpha;
  }
  throw Error("unknown axis");
}

void set_axis(ScenarioConfig& cfg, Axis a, double value) {
  switch (a) {
    case Axis::g: cfg.policy.g = value; return;
    case Axis::tau: cfg.policy.tau = value; return;
    case Axis::Lg: cfg.policy.Lg = value; return;
    case Axis::w: cfg.market.w = value; return;
    case Axis::N: cfg.market.N = value; return;
    case Axis::m: cfg.tech.m = value; return;
    case Axis::F: cfg.tech.F = value; return;
    case Axis::alpha: cfg.utility.alpha = value; return;
  }
  throw Error("unknown axis");
}

}  // namespace caraeq
