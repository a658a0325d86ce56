#include "caraeq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace caraeq {

namespace {

constexpr double kBracketLift = 1e-12;
constexpr double kBracketSpan = 1e6;
constexpr double kBisectTol = 1e-15;
constexpr double kProbeStep = 1e-6;

struct PriceSums {
  double S = 0.0;  // weight * sum_i p_i
  double T = 0.0;  // weight * sum_i p_i * ln p_i
};

PriceSums price_sums(std::span<const double> prices, double weight) {
  PriceSums ps;
  for (double p : prices) {
    ps.S += p;
    ps.T += p * std::log(p);
  }
  ps.S *= weight;
  ps.T *= weight;
  return ps;
}

// Perceived demand of one firm quoting x with aggregates held fixed.
double perceived_quantity(double x, const PriceSums& ps, double net_income,
                          double alpha) {
  return (net_income + (ps.T - ps.S * std::log(x)) / alpha) / ps.S;
}

double perceived_profit(double x, const PriceSums& ps, double buyers,
                        double g_i, const ValidatedScenario& s) {
  const double q = perceived_quantity(x, ps, s.net_income(), s.alpha());
  return (buyers * q + g_i) * (x - s.m() * s.w()) - s.F() * s.w();
}

// Root of the monotone first-order condition given aggregates and employment.
double solve_foc(const PriceSums& ps, double buyers, double g_i,
                 const ValidatedScenario& s) {
  const double mw = s.m() * s.w();
  const double rhs =
      s.alpha() * s.net_income() + s.alpha() * g_i * ps.S / buyers;
  auto f = [&](double x) {
    return ps.S * std::log(x) - ps.T + ps.S * (1.0 - mw / x) - rhs;
  };

  double lo = mw * (1.0 + kBracketLift);
  double hi = mw * kBracketSpan;
  const double flo = f(lo), fhi = f(hi);
  if (!(flo <= 0.0) || !(fhi >= 0.0)) {
    std::ostringstream os;
    os << "first-order condition not bracketed on [" << lo << ", " << hi
       << "]: f(lo) = " << flo << ", f(hi) = " << fhi;
    throw RootNotBracketed(os.str());
  }
  while (hi - lo > kBisectTol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> demand_given_prices(std::span<const double> prices,
                                        double net_income,
                                        const UtilitySpec& u, double weight) {
  if (prices.size() < 2) throw Error("demand needs at least two varieties");
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
      std::ostringstream os;
      os << "price of variety " << i << " must be positive, got " << prices[i];
      throw Error(os.str());
    }
  }
  const PriceSums ps = price_sums(prices, weight);
  std::vector<double> q(prices.size());
  for (std::size_t j = 0; j < prices.size(); ++j) {
    q[j] = perceived_quantity(prices[j], ps, net_income, u.alpha);
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!(q[j] > 0.0)) {
      std::ostringstream os;
      os << "demand for variety " << j << " is " << q[j]
         << " (non-interior bundle)";
      throw NonInteriorDemand(os.str(), j, q);
    }
  }
  return q;
}

double best_response_price(std::size_t i, std::span<const double> prices,
                           double L_current, const ValidatedScenario& s,
                           double g_i) {
  if (i >= prices.size()) throw Error("best response: firm index out of range");
  const double weight = s.N() / static_cast<double>(prices.size());
  const PriceSums ps = price_sums(prices, weight);
  const double buyers = L_current + s.Lg();
  if (!(buyers > 0.0)) throw Error("best response needs positive employment");
  return solve_foc(ps, buyers, g_i, s);
}

double best_response_price(std::size_t i, std::span<const double> prices,
                           double L_current, const ValidatedScenario& s) {
  return best_response_price(i, prices, L_current, s, s.g());
}

double DiscreteEconomy::mean_price() const {
  return std::accumulate(prices.begin(), prices.end(), 0.0) /
         static_cast<double>(prices.size());
}

double DiscreteEconomy::mean_quantity() const {
  return std::accumulate(quantities.begin(), quantities.end(), 0.0) /
         static_cast<double>(quantities.size());
}

double DiscreteEconomy::mean_profit() const {
  const double buyers = L + scenario.Lg();
  const double mw = scenario.m() * scenario.w();
  double acc = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    acc += (buyers * quantities[i] + scenario.g()) * (prices[i] - mw) -
           scenario.F() * scenario.w();
  }
  return acc / static_cast<double>(prices.size());
}

DiscreteEconomy solve_fixed_point(
    std::vector<double> initial_prices, const ValidatedScenario& s,
    const SolverSettings& settings, std::span<const double> g_per_firm,
    const std::function<void(const DiscreteEconomy&)>& on_iterate) {
  const std::size_t n = initial_prices.size();
  if (n < 2) throw Error("fixed point needs at least two firms");
  if (!g_per_firm.empty() && g_per_firm.size() != n) {
    throw Error("per-firm purchases must match the number of firms");
  }
  if (!(settings.damping > 0.0 && settings.damping <= 1.0)) {
    throw Error("damping must lie in (0, 1]");
  }
  for (double p : initial_prices) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error("initial prices must be positive");
    }
  }

  DiscreteEconomy econ(s);
  econ.n = static_cast<int>(n);
  econ.weight = s.N() / static_cast<double>(n);
  econ.prices = std::move(initial_prices);
  econ.quantities.assign(n, 0.0);

  auto g_of = [&](std::size_t i) {
    return g_per_firm.empty() ? s.g() : g_per_firm[i];
  };
  double G = 0.0;  // weight * sum_i g_i
  for (std::size_t i = 0; i < n; ++i) G += g_of(i);
  G *= econ.weight;

  // Starting employment guess; only load-bearing until the first feasible
  // employment update (it feeds the purchase term of the first price pass).
  econ.L = 1.0 + s.N() * (s.m() * s.g() + s.F());

  const double m = s.m(), F = s.F(), N = s.N(), Lg = s.Lg();
  std::vector<double> next(n);
  std::size_t bad_variety = 0;
  std::vector<double> bad_quantities;

  for (int iter = 1; iter <= settings.max_iter; ++iter) {
    econ.iterations = iter;

    // (a) demand at current prices. A non-interior bundle rejects the
    // iterate: no demand or employment update is taken from it.
    const PriceSums ps = price_sums(econ.prices, econ.weight);
    bool interior = true;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = perceived_quantity(econ.prices[j], ps, s.net_income(),
                                   s.alpha());
      if (interior && !(next[j] > 0.0)) {
        interior = false;
        bad_variety = j;
      }
    }
    if (!interior) bad_quantities = next;

    // (b) private employment from the labor-market identity. The update only
    // exists while m*Qbar < 1; sub-cost transient prices can violate that, in
    // which case the previous employment carries over.
    bool employment_ok = false;
    double L_step = 0.0;
    if (interior) {
      econ.quantities = next;
      double Q = std::accumulate(next.begin(), next.end(), 0.0) * econ.weight;
      if (m * Q < 1.0) {
        const double L_new = (m * Lg * Q + m * G + N * F) / (1.0 - m * Q);
        L_step = std::abs(L_new - econ.L) / econ.L;
        econ.L = L_new;
        employment_ok = true;
      }
    }
    econ.demand_interior = interior;

    // The observer sees the state with quantities and employment evaluated at
    // the current prices; step fields still describe the previous iteration.
    if (on_iterate) on_iterate(econ);

    // (c) damped simultaneous best responses against the current aggregates.
    // Firms with equal purchase allotments share one first-order condition,
    // so the root is solved once per distinct allotment.
    const double buyers = econ.L + Lg;
    double price_step = 0.0;
    const double shared_br =
        g_per_firm.empty() ? solve_foc(ps, buyers, s.g(), s) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double br =
          g_per_firm.empty() ? shared_br : solve_foc(ps, buyers, g_of(i), s);
      const double p_new =
          (1.0 - settings.damping) * econ.prices[i] + settings.damping * br;
      price_step = std::max(price_step,
                            std::abs(p_new - econ.prices[i]) / econ.prices[i]);
      next[i] = p_new;
    }
    econ.prices = next;
    econ.last_price_step = price_step;
    econ.last_L_step = L_step;

    if (interior && employment_ok && price_step < settings.tol &&
        L_step < settings.tol) {
      econ.converged = true;
      break;
    }
  }

  if (!econ.converged) {
    if (!econ.demand_interior) {
      std::ostringstream os;
      os << "demand for variety " << bad_variety << " is "
         << bad_quantities[bad_variety] << " after " << econ.iterations
         << " iterations (non-interior bundle)";
      throw NonInteriorDemand(os.str(), bad_variety, bad_quantities,
                              econ.iterations);
    }
    std::ostringstream os;
    os << "no convergence after " << econ.iterations
       << " iterations: last relative price step " << econ.last_price_step
       << ", last relative employment step " << econ.last_L_step;
    throw NoConvergence(os.str(), econ.iterations, econ.last_price_step,
                        econ.last_L_step);
  }

  // Refresh demand and employment at the final prices so the returned state
  // is self-consistent (the loop above measures them one step behind).
  econ.quantities = demand_given_prices(econ.prices, s.net_income(),
                                        s.config().utility, econ.weight);
  {
    const double Q =
        std::accumulate(econ.quantities.begin(), econ.quantities.end(), 0.0) *
        econ.weight;
    econ.L = (m * Lg * Q + m * G + N * F) / (1.0 - m * Q);
  }

  // Second-order probe: the root must locally dominate nearby deviations.
  {
    const PriceSums ps = price_sums(econ.prices, econ.weight);
    const double buyers = econ.L + Lg;
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double at = perceived_profit(econ.prices[i], ps, buyers, g_of(i), s);
      const double up = perceived_profit(econ.prices[i] * (1.0 + kProbeStep),
                                         ps, buyers, g_of(i), s);
      const double dn = perceived_profit(econ.prices[i] * (1.0 - kProbeStep),
                                         ps, buyers, g_of(i), s);
      margin = std::min(margin, std::min(at - up, at - dn));
    }
    econ.second_order_margin = margin;
    const double scale =
        std::abs(perceived_profit(econ.prices[0], ps, buyers, g_of(0), s));
    econ.local_profit_max = margin >= -1e-10 * std::max(1.0, scale);
  }

  return econ;
}

double symmetry_gap(const DiscreteEconomy& econ) {
  const auto [lo, hi] =
      std::minmax_element(econ.prices.begin(), econ.prices.end());
  return (*hi - *lo) / *lo;
}

}  // namespace caraeq
