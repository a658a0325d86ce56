#include <doctest.h>

#include <cmath>
#include <vector>

#include "caraeq/closed_form.hpp"
#include "caraeq/oracle.hpp"
#include "test_util.hpp"

using namespace caraeq;
using caraeq_test::lean_baseline;
using caraeq_test::purchase_scenario;
using caraeq_test::rel_close;

namespace {

ValidatedScenario two_by_two() {
  ScenarioConfig cfg;
  cfg.market.N = 2.0;
  cfg.market.w = 1.0;
  cfg.tech.m = 1.0;
  cfg.tech.F = 0.0;
  cfg.utility.alpha = 1.0;
  cfg.policy.tau = 0.0;
  return validate(cfg);
}

double spend(const std::vector<double>& p, const std::vector<double>& q,
             double weight) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * q[i];
  return weight * acc;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("equal prices split demand evenly") {
  const ValidatedScenario s = two_by_two();
  const std::vector<double> prices{1.0, 1.0};
  const auto q = demand_given_prices(prices, 1.0, s.config().utility, 1.0);
  REQUIRE(q.size() == 2);
  CHECK(rel_close(q[0], 0.5, 1e-14));
  CHECK(rel_close(q[1], 0.5, 1e-14));
}

TEST_CASE("a price of e against 1 pushes demand to the corner") {
  const ValidatedScenario s = two_by_two();
  const std::vector<double> prices{1.0, std::exp(1.0)};
  bool threw = false;
  try {
    (void)demand_given_prices(prices, 1.0, s.config().utility, 1.0);
  } catch (const NonInteriorDemand& e) {
    threw = true;
    CHECK(e.variety() == 1);
    CHECK(e.iteration() == -1);
    REQUIRE(e.quantities().size() == 2);
    CHECK(rel_close(e.quantities()[0], 1.0, 1e-12));
    CHECK(std::fabs(e.quantities()[1]) <= 1e-14);
  }
  CHECK(threw);
}

TEST_CASE("symmetric prices give q = net income / (N p)") {
  const ValidatedScenario s = validate(lean_baseline());
  const int n = 5;
  const std::vector<double> prices(n, 1.3);
  const double weight = s.N() / n;
  const auto q =
      demand_given_prices(prices, s.net_income(), s.config().utility, weight);
  for (double qi : q) {
    CHECK(rel_close(qi, s.net_income() / (s.N() * 1.3), 1e-13));
  }
}

TEST_CASE("interior demand exhausts the budget exactly") {
  const ValidatedScenario s = validate(lean_baseline());
  const std::vector<double> prices{0.98, 1.0, 1.02, 1.04};
  const double weight = s.N() / prices.size();
  const auto q =
      demand_given_prices(prices, s.net_income(), s.config().utility, weight);
  CHECK(rel_close(spend(prices, q, weight), s.net_income(), 1e-12));
}

TEST_CASE("demand rejects malformed inputs") {
  const ValidatedScenario s = two_by_two();
  CHECK_THROWS_AS(
      (void)demand_given_prices(std::vector<double>{1.0}, 1.0,
                                s.config().utility, 1.0),
      Error);
  CHECK_THROWS_AS(
      (void)demand_given_prices(std::vector<double>{1.0, -1.0}, 1.0,
                                s.config().utility, 1.0),
      Error);
}

TEST_CASE("the closed-form price is a best-response fixed point") {
  const ValidatedScenario s = validate(lean_baseline());
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  const int n = 8;
  const std::vector<double> prices(n, eq.p);
  const double br = best_response_price(0, prices, eq.L, s);
  CHECK(rel_close(br, eq.p, 1e-11));
  CHECK(rel_close(br, 1.04, 1e-11));

  const ValidatedScenario sp = validate(purchase_scenario());
  const SymmetricEquilibrium eqp = solve_equilibrium(sp);
  const std::vector<double> pp(n, eqp.p);
  CHECK(rel_close(best_response_price(3, pp, eqp.L, sp), eqp.p, 1e-11));
}

TEST_CASE("the best response zeroes the first-order condition") {
  const ValidatedScenario s = validate(purchase_scenario());
  const std::vector<double> prices{1.1, 1.3};
  const double L = 40.0, g_i = 0.3;
  const double br = best_response_price(0, prices, L, s, g_i);

  const double weight = s.N() / prices.size();
  double S = 0.0, T = 0.0;
  for (double p : prices) {
    S += p;
    T += p * std::log(p);
  }
  S *= weight;
  T *= weight;
  const double mw = s.m() * s.w();
  const double resid = S * std::log(br) - T + S * (1.0 - mw / br) -
                       s.alpha() * s.net_income() -
                       s.alpha() * g_i * S / (L + s.Lg());
  CHECK(std::fabs(resid) <= 1e-9 * S);
  CHECK(br > mw);
}

TEST_CASE("fixed point from spread-out prices recovers the closed form") {
  const ValidatedScenario s = validate(lean_baseline());
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  std::vector<double> init(16);
  for (int i = 0; i < 16; ++i) init[i] = 0.6 + 0.09 * i;  // 0.6 .. 1.95
  const DiscreteEconomy econ = solve_fixed_point(init, s);

  CHECK(econ.converged);
  CHECK(econ.demand_interior);
  CHECK(symmetry_gap(econ) < 1e-8);
  CHECK(rel_close(econ.mean_price(), eq.p, 1e-9));
  CHECK(rel_close(econ.mean_quantity(), eq.q, 1e-9));
  CHECK(rel_close(econ.L, eq.L, 1e-9));
  CHECK(rel_close(econ.mean_profit(), eq.Pi, 1e-8));
  CHECK(econ.local_profit_max);
  CHECK(econ.weight == doctest::Approx(10.0 / 16.0));
}

TEST_CASE("discretization is exact: two firms agree with five hundred twelve") {
  const ValidatedScenario s = validate(purchase_scenario());
  const DiscreteEconomy small =
      solve_fixed_point(std::vector<double>(2, 1.2), s);
  const DiscreteEconomy large =
      solve_fixed_point(std::vector<double>(512, 1.2), s);
  CHECK(rel_close(small.mean_price(), large.mean_price(), 1e-10));
  CHECK(rel_close(small.L, large.L, 1e-10));
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  CHECK(rel_close(small.mean_price(), eq.p, 1e-10));
  CHECK(rel_close(large.mean_price(), eq.p, 1e-10));
}

TEST_CASE("warm start at the closed form settles immediately") {
  for (const ScenarioConfig& cfg : {lean_baseline(), purchase_scenario()}) {
    const ValidatedScenario s = validate(cfg);
    const SymmetricEquilibrium eq = solve_equilibrium(s);
    const DiscreteEconomy econ =
        solve_fixed_point(std::vector<double>(8, eq.p), s);
    CHECK(econ.converged);
    CHECK(econ.iterations <= 2);
    CHECK(rel_close(econ.mean_price(), eq.p, 1e-12));
    CHECK(rel_close(econ.L, eq.L, 1e-11));
  }
}

TEST_CASE("every interior iterate satisfies the consumer budget") {
  const ValidatedScenario s = validate(purchase_scenario());
  std::vector<double> init(64);
  for (int i = 0; i < 64; ++i) init[i] = 0.55 + 0.02 * i;  // 0.55 .. 1.81
  int observed = 0, interior_seen = 0;
  const DiscreteEconomy econ = solve_fixed_point(
      init, s, SolverSettings{}, {}, [&](const DiscreteEconomy& state) {
        ++observed;
        if (!state.demand_interior) return;
        ++interior_seen;
        CHECK(rel_close(spend(state.prices, state.quantities, state.weight),
                        s.net_income(), 1e-12));
      });
  CHECK(econ.converged);
  CHECK(observed == econ.iterations);
  CHECK(interior_seen > 0);
  CHECK(symmetry_gap(econ) < 1e-8);
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  CHECK(rel_close(econ.mean_price(), eq.p, 1e-9));
  CHECK(rel_close(econ.mean_profit(), eq.Pi, 1e-8));
}

TEST_CASE("early corner iterates are rejected, then the solve recovers") {
  ScenarioConfig cfg;
  cfg.market.N = 50.0;
  cfg.market.w = 1.0;
  cfg.tech.m = 2.0;
  cfg.tech.F = 0.5;
  cfg.utility.alpha = 10.0;
  cfg.policy.g = 0.5;
  cfg.policy.tau = 0.5;
  cfg.policy.Lg = 5.0;
  const ValidatedScenario s = validate(cfg);

  std::vector<double> init{1.0, 1.0, 1.0, 1.0, 4.0, 4.0, 4.0, 4.0};
  bool saw_rejected = false;
  double L_at_rejection = -1.0;
  const DiscreteEconomy econ = solve_fixed_point(
      init, s, SolverSettings{}, {}, [&](const DiscreteEconomy& state) {
        if (!state.demand_interior && !saw_rejected) {
          saw_rejected = true;
          L_at_rejection = state.L;
        }
      });
  CHECK(saw_rejected);
  // Employment never updated from a rejected bundle: still the starting guess.
  CHECK(L_at_rejection == 1.0 + 50.0 * (2.0 * 0.5 + 0.5));
  CHECK(econ.converged);
  CHECK(econ.demand_interior);
  CHECK(symmetry_gap(econ) < 1e-8);
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  CHECK(rel_close(econ.mean_price(), eq.p, 1e-9));
  CHECK(rel_close(econ.L, eq.L, 1e-9));
}

TEST_CASE("exhausting the budget mid-flight reports the step sizes") {
  const ValidatedScenario s = validate(lean_baseline());
  SolverSettings settings;
  settings.max_iter = 3;
  bool threw = false;
  try {
    (void)solve_fixed_point(std::vector<double>(4, 1.2), s, settings);
  } catch (const NoConvergence& e) {
    threw = true;
    CHECK(e.iterations() == 3);
    CHECK(e.last_price_step() > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("terminating while non-interior reports the offending bundle") {
  ScenarioConfig cfg;
  cfg.market.N = 50.0;
  cfg.market.w = 1.0;
  cfg.tech.m = 2.0;
  cfg.tech.F = 0.5;
  cfg.utility.alpha = 10.0;
  cfg.policy.g = 0.5;
  cfg.policy.tau = 0.5;
  cfg.policy.Lg = 5.0;
  const ValidatedScenario s = validate(cfg);

  SolverSettings settings;
  settings.max_iter = 2;
  std::vector<double> init{1.0, 1.0, 1.0, 1.0, 4.0, 4.0, 4.0, 4.0};
  bool threw = false;
  try {
    (void)solve_fixed_point(init, s, settings);
  } catch (const NonInteriorDemand& e) {
    threw = true;
    CHECK(e.iteration() == 2);
    REQUIRE(e.quantities().size() == 8);
    CHECK(e.quantities()[e.variety()] <= 0.0);
  }
  CHECK(threw);
}

TEST_CASE("unequal purchase allotments split the price distribution") {
  const ValidatedScenario s = validate(purchase_scenario());
  const std::vector<double> g_per_firm{0.5, 1.0, 1.5, 1.0};
  const DiscreteEconomy econ = solve_fixed_point(
      std::vector<double>(4, 1.05), s, SolverSettings{}, g_per_firm);
  CHECK(econ.converged);
  // Higher allotment, higher price; equal allotments tie exactly.
  CHECK(econ.prices[0] < econ.prices[1]);
  CHECK(econ.prices[1] < econ.prices[2]);
  CHECK(econ.prices[1] == econ.prices[3]);
  CHECK(symmetry_gap(econ) > 1e-6);
  // The final bundle still exhausts the budget.
  CHECK(rel_close(spend(econ.prices, econ.quantities, econ.weight),
                  s.net_income(), 1e-11));
  CHECK(econ.local_profit_max);
}

TEST_CASE("tight tolerance pins the fixed point to the closed form") {
  const ValidatedScenario s = validate(purchase_scenario());
  SolverSettings settings;
  settings.tol = 1e-13;
  const DiscreteEconomy econ =
      solve_fixed_point(std::vector<double>(8, 2.1), s, settings);
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  CHECK(econ.converged);
  CHECK(rel_close(econ.mean_price(), eq.p, 1e-10));
  CHECK(rel_close(econ.L, eq.L, 1e-10));
  CHECK(econ.local_profit_max);
  CHECK(econ.second_order_margin >= -1e-10);
}

TEST_CASE("solver input contracts") {
  const ValidatedScenario s = validate(lean_baseline());
  CHECK_THROWS_AS((void)solve_fixed_point(std::vector<double>(1, 1.0), s),
                  Error);
  CHECK_THROWS_AS(
      (void)solve_fixed_point(std::vector<double>{1.0, 0.0}, s), Error);
  SolverSettings bad;
  bad.damping = 0.0;
  CHECK_THROWS_AS(
      (void)solve_fixed_point(std::vector<double>(4, 1.0), s, bad), Error);
  const std::vector<double> wrong_size{1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)solve_fixed_point(std::vector<double>(4, 1.0), s,
                                          SolverSettings{}, wrong_size),
                  Error);
}

TEST_SUITE_END();
