#ifndef CARAEQ_SAMPLING_HPP
#define CARAEQ_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "caraeq/scenario.hpp"

namespace caraeq {

/// Deterministic uniform sampler. Doubles are derived from the raw mt19937_64
/// stream by hand so that identical seeds give identical scenarios on every
/// platform (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double canonical();  // in [0,1)
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 gen_;
};

/// Draws an admissible scenario: N, m, w log-uniform over [2,100], [0.1,5],
/// [0.1,10]; tau uniform [0.05,0.95]; F uniform [0,2]; g uniform [0,5];
/// Lg uniform [0,20]; alpha a uniform fraction [0.05,0.95] of N*m;
/// kappa = k = 1.
ScenarioConfig sample_scenario(Rng& rng);

}  // namespace caraeq

#endif
