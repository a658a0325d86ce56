#ifndef CARAEQ_VERIFICATION_HPP
#define CARAEQ_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "caraeq/comparative_statics.hpp"
#include "caraeq/scenario.hpp"

namespace caraeq {

/// Result of locating the profit-response sign change in Lg and probing both
/// sides of it.
struct ThresholdFlipResult {
  bool bracketed = false;
  double Lg_star = 0.0;        // located crossing
  double Lambda_at_star = 0.0; // threshold evaluated at the crossing
  double gap = 0.0;            // |Lg_star - Lambda_at_star|
  double probe_offset = 0.0;
  double analytic_below = 0.0, analytic_above = 0.0;
  double fd_below = 0.0, fd_above = 0.0;
  bool sign_flips = false;     // strict - to + on both routes
  bool pass = false;           // sign_flips and gap <= 1e-6
};

struct VerificationSummary {
  int scenarios = 0;
  int claims_checked = 0;
  int claim_failures = 0;
  int equality_checks = 0;      // g = 0 branch probes
  int equality_failures = 0;
  int t6_applicable = 0;
  int t6_failures = 0;
  double max_jacobian_discrepancy = 0.0;
  int jacobian_disagreements = 0;
  ThresholdFlipResult flip;
  std::vector<std::string> failures;  // first few failure descriptions
  double elapsed_seconds = 0.0;

  bool all_pass() const {
    return claim_failures == 0 && equality_failures == 0 &&
           jacobian_disagreements == 0 && flip.pass;
  }
};

/// Certifies every comparative-statics claim over `count` sampled scenarios
/// plus, per scenario, the g = 0 equality branch of the quantity/price
/// responses to Lg; tracks analytic-vs-finite-difference agreement throughout;
/// finishes with the constructed positive-threshold sign-flip probe.
VerificationSummary verify_sample(std::uint64_t seed, int count);

/// A scenario whose profit response to Lg changes sign at a small positive Lg
/// (steep crossing, so the flip is observable outside the sign band).
ScenarioConfig threshold_flip_base();

/// Locates the sign change of the profit response along Lg for the given base
/// scenario and probes it at +/- probe_offset.
ThresholdFlipResult probe_threshold_flip(const ScenarioConfig& base,
                                         double Lg_max = 1.0,
                                         double probe_offset = 5e-7);

}  // namespace caraeq

#endif
