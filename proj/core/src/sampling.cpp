#include "caraeq/sampling.hpp"

#include <cmath>

namespace caraeq {

double Rng::canonical() {
  // 53 random mantissa bits; same value for a given seed on every platform.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * canonical();
}

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

ScenarioConfig sample_scenario(Rng& rng) {
  ScenarioConfig cfg;
  cfg.market.N = rng.log_uniform(2.0, 100.0);
  cfg.tech.m = rng.log_uniform(0.1, 5.0);
  cfg.market.w = rng.log_uniform(0.1, 10.0);
  cfg.policy.tau = rng.uniform(0.05, 0.95);
  cfg.tech.F = rng.uniform(0.0, 2.0);
  cfg.policy.g = rng.uniform(0.0, 5.0);
  cfg.policy.Lg = rng.uniform(0.0, 20.0);
  cfg.utility.alpha = rng.uniform(0.05, 0.95) * cfg.market.N * cfg.tech.m;
  cfg.utility.kappa = 1.0;
  cfg.utility.k = 1.0;
  return cfg;
}

}  // namespace caraeq
