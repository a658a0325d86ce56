#ifndef CARAEQ_ORACLE_HPP
#define CARAEQ_ORACLE_HPP

#include <functional>
#include <span>
#include <vector>

#include "caraeq/scenario.hpp"

namespace caraeq {

struct SolverSettings {
  double tol = 1e-12;      // convergence: max relative price step and L step
  double damping = 0.5;    // fraction of the best-response step applied
  int max_iter = 100000;
};

/// An n-firm discretization of the continuum economy; each firm carries
/// measure weight = N/n.
struct DiscreteEconomy {
  explicit DiscreteEconomy(ValidatedScenario s) : scenario(std::move(s)) {}

  ValidatedScenario scenario;
  int n = 0;
  double weight = 0.0;
  std::vector<double> prices;
  std::vector<double> quantities;
  double L = 0.0;
  int iterations = 0;
  bool converged = false;
  bool demand_interior = false;
  double last_price_step = 0.0;  // max relative price movement, final iteration
  double last_L_step = 0.0;
  bool local_profit_max = false;    // post-convergence second-order probe
  double second_order_margin = 0.0; // min profit drop at p*(1 +/- 1e-6)

  double mean_price() const;
  double mean_quantity() const;
  double mean_profit() const;  // uses uniform per-firm purchases g
};

/// CARA demand of one consumer across n priced varieties, each of measure
/// `weight`. Throws NonInteriorDemand (carrying the computed vector and the
/// first offending variety) if any quantity is non-positive.
std::vector<double> demand_given_prices(std::span<const double> prices,
                                        double net_income,
                                        const UtilitySpec& u, double weight);

/// Profit-maximizing price of firm i against fixed rival prices and current
/// private employment, found by bisection on the monotone first-order
/// condition over [m*w*(1+1e-12), 1e6*m*w]. `g_i` overrides the common
/// per-variety purchase for this firm. Throws RootNotBracketed.
double best_response_price(std::size_t i, std::span<const double> prices,
                           double L_current, const ValidatedScenario& s,
                           double g_i);
double best_response_price(std::size_t i, std::span<const double> prices,
                           double L_current, const ValidatedScenario& s);

/// Damped simultaneous best-response iteration from the given initial prices.
/// Per iteration: (a) demand at current prices, (b) private employment from
/// the discretized labor-market identity, (c) damped best-response price
/// update. While demand is non-interior the state is rejected: no demand or
/// employment update is taken (the model is never clamped) and only the price
/// pass runs; NonInteriorDemand propagates if the solver terminates in that
/// state. `g_per_firm` optionally assigns heterogeneous purchases (diagnostic
/// use; the symmetry result assumes uniform g). `on_iterate` observes the
/// state after each full iteration.
DiscreteEconomy solve_fixed_point(
    std::vector<double> initial_prices, const ValidatedScenario& s,
    const SolverSettings& settings = {},
    std::span<const double> g_per_firm = {},
    const std::function<void(const DiscreteEconomy&)>& on_iterate = nullptr);

/// Relative spread (max - min)/min of the converged price vector.
double symmetry_gap(const DiscreteEconomy& econ);

}  // namespace caraeq

#endif
