#include "caraeq/closed_form.hpp"

#include <cmath>
#include <sstream>

namespace caraeq {

namespace {

constexpr double kCrossCheckTol = 1e-10;
constexpr double kIdentityTol = 1e-10;

void require_nondegenerate(double den, double scale, const char* what) {
  if (!(std::abs(den) > 1e-12 * std::max(1.0, std::abs(scale)))) {
    throw DegenerateDenominator(what);
  }
}

}  // namespace

double private_employment(const ValidatedScenario& s) {
  const double N = s.N(), m = s.m(), F = s.F(), alpha = s.alpha();
  const double g = s.g(), tau = s.tau(), Lg = s.Lg();
  const double den = alpha + (N * m - alpha) * tau;
  return N * ((1.0 - tau) * (m * Lg + alpha * F) + (m * g + F) * m * N) / den;
}

double price_form_a(const ValidatedScenario& s, double L) {
  const double total = L + s.Lg();
  const double den = total - s.alpha() * s.g();
  require_nondegenerate(den, total, "price (demand form): L + Lg - alpha*g vanishes");
  const double unit_cost = s.m() * s.w() + s.alpha() * s.net_income() / s.N();
  return total / den * unit_cost;
}

double price_form_b(const ValidatedScenario& s, double L, double q) {
  const double total = L + s.Lg();
  const double den = total - s.alpha() * (total * q + s.g());
  require_nondegenerate(
      den, total, "price (markup form): L + Lg - alpha*((L+Lg)q + g) vanishes");
  return s.m() * s.w() * total / den;
}

SymmetricEquilibrium solve_equilibrium(const ValidatedScenario& s) {
  const double N = s.N(), m = s.m(), alpha = s.alpha();
  const double g = s.g(), tau = s.tau(), Lg = s.Lg();

  SymmetricEquilibrium eq;
  eq.L = private_employment(s);
  const double total = eq.L + Lg;
  eq.q = (1.0 - tau) * (total - alpha * g) /
         ((N * m + alpha * (1.0 - tau)) * total);

  const double pa = price_form_a(s, eq.L);
  const double pb = price_form_b(s, eq.L, eq.q);
  const double rel = std::abs(pa - pb) / std::max(std::abs(pa), std::abs(pb));
  if (!(rel <= kCrossCheckTol)) {
    std::ostringstream os;
    os << "price cross-check failed: demand form " << pa << " vs markup form "
       << pb << " (relative gap " << rel << ")";
    throw InternalInconsistency(os.str());
  }
  eq.p = pa;
  eq.markup = eq.p - m * s.w();
  eq.Pi = (total * eq.q + g) * eq.markup - s.F() * s.w();
  eq.welfare = utility_of_bundle(eq.q, s.config().utility, N);

  const double bound = alpha * (total * eq.q + g) * eq.L / (total * N);
  eq.flags.price_positive = eq.p > 0.0;
  eq.flags.markup_positive = eq.markup > 0.0;
  eq.flags.profit_nonnegative = eq.Pi >= 0.0;
  eq.flags.fixed_cost_within_bound = s.F() <= bound;
  return eq;
}

double profit_threshold_lambda(const ValidatedScenario& s,
                               const SymmetricEquilibrium& eq) {
  const double N = s.N(), m = s.m(), alpha = s.alpha(), tau = s.tau();
  return (1.0 - N * m * eq.q) * (N * m / (1.0 - tau) + 2.0 * alpha) * s.g() -
         N * (m * s.g() + s.F());
}

PropositionReport check_propositions(const ValidatedScenario& s,
                                     const SymmetricEquilibrium& eq) {
  const double N = s.N(), alpha = s.alpha(), g = s.g();
  const double total = eq.L + s.Lg();

  PropositionReport r;
  r.resource_slack_positive = total - alpha * (total * eq.q + g) > 0.0;
  r.markup_positive = eq.markup > 0.0;
  r.fixed_cost_bound = alpha * (total * eq.q + g) * eq.L / (total * N);
  r.fixed_cost_within_bound = s.F() <= r.fixed_cost_bound;
  r.profit_nonnegative = eq.Pi >= 0.0;
  r.bound_implies_profit = !r.fixed_cost_within_bound || r.profit_nonnegative;

  const double rhs = N * (s.m() * total * eq.q + s.m() * g + s.F());
  r.employment_residual = std::abs(eq.L - rhs) / std::abs(eq.L);
  r.employment_identity_ok = r.employment_residual <= kIdentityTol;

  r.all_ok = r.resource_slack_positive && r.markup_positive &&
             r.bound_implies_profit && r.employment_identity_ok;
  return r;
}

}  // namespace caraeq
