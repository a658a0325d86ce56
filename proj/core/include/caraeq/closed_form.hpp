#ifndef CARAEQ_CLOSED_FORM_HPP
#define CARAEQ_CLOSED_FORM_HPP

#include "caraeq/scenario.hpp"

namespace caraeq {

struct EquilibriumFlags {
  bool price_positive = false;
  bool markup_positive = false;
  bool profit_nonnegative = false;
  bool fixed_cost_within_bound = false;  // sufficient condition for Pi >= 0
};

/// Symmetric equilibrium outcome: common price, per-variety private demand,
/// private employment, per-firm profit.
struct SymmetricEquilibrium {
  double p = 0.0;
  double q = 0.0;
  double L = 0.0;
  double Pi = 0.0;
  double markup = 0.0;   // p - m*w
  double welfare = 0.0;  // per-consumer utility of the equilibrium bundle
  EquilibriumFlags flags;
};

/// Private employment in closed form (the affine function of policy doses).
double private_employment(const ValidatedScenario& s);

/// Demand-side price expression; requires L + Lg - alpha*g > 0.
double price_form_a(const ValidatedScenario& s, double L);

/// Markup-form price expression; requires L + Lg - alpha*((L+Lg)q + g) > 0.
double price_form_b(const ValidatedScenario& s, double L, double q);

/// Solves the symmetric equilibrium. The price is computed through both
/// independent forms and cross-checked to 1e-10 relative; disagreement
/// raises InternalInconsistency.
SymmetricEquilibrium solve_equilibrium(const ValidatedScenario& s);

/// Threshold for the sign of the profit response to public employment:
/// response is positive, zero, or negative as Lg - threshold is.
double profit_threshold_lambda(const ValidatedScenario& s,
                               const SymmetricEquilibrium& eq);

struct PropositionReport {
  bool resource_slack_positive = false;   // L + Lg - alpha*((L+Lg)q + g) > 0
  bool markup_positive = false;           // p > m*w
  double fixed_cost_bound = 0.0;          // alpha*((L+Lg)q+g)*L / ((L+Lg)*N)
  bool fixed_cost_within_bound = false;   // F <= bound
  bool profit_nonnegative = false;        // Pi >= 0
  bool bound_implies_profit = false;      // the implication itself
  double employment_residual = 0.0;       // relative residual of the labor-market identity
  bool employment_identity_ok = false;
  bool all_ok = false;
};

/// Verifies the structural guarantees at a solved equilibrium.
PropositionReport check_propositions(const ValidatedScenario& s,
                                     const SymmetricEquilibrium& eq);

}  // namespace caraeq

#endif
