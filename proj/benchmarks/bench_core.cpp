#include <benchmark/benchmark.h>

#include <vector>

#include "caraeq/closed_form.hpp"
#include "caraeq/comparative_statics.hpp"
#include "caraeq/oracle.hpp"
#include "caraeq/sampling.hpp"

namespace {

caraeq::ValidatedScenario bench_scenario() {
  caraeq::ScenarioConfig cfg;
  cfg.market.N = 10.0;
  cfg.market.w = 1.0;
  cfg.tech.m = 1.0;
  cfg.tech.F = 0.1;
  cfg.utility.alpha = 0.5;
  cfg.policy.g = 1.0;
  cfg.policy.tau = 0.2;
  return caraeq::validate(cfg);
}

void BM_SolveEquilibrium(benchmark::State& state) {
  const auto s = bench_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(caraeq::solve_equilibrium(s));
  }
}
BENCHMARK(BM_SolveEquilibrium);

void BM_AnalyticJacobian(benchmark::State& state) {
  const auto s = bench_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(caraeq::analytic_jacobian(s));
  }
}
BENCHMARK(BM_AnalyticJacobian);

void BM_FiniteDifferenceJacobian(benchmark::State& state) {
  const auto s = bench_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(caraeq::finite_difference_jacobian(s));
  }
}
BENCHMARK(BM_FiniteDifferenceJacobian);

void BM_CertifyTheorems(benchmark::State& state) {
  const auto s = bench_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(caraeq::certify_theorems(s));
  }
}
BENCHMARK(BM_CertifyTheorems);

void BM_DemandPass(benchmark::State& state) {
  const auto s = bench_scenario();
  const int n = static_cast<int>(state.range(0));
  caraeq::Rng rng(7);
  std::vector<double> prices(n);
  for (auto& p : prices) p = rng.uniform(1.0, 1.02);
  const double weight = s.N() / n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(caraeq::demand_given_prices(
        prices, s.net_income(), s.config().utility, weight));
  }
}
BENCHMARK(BM_DemandPass)->Arg(16)->Arg(64)->Arg(256);

void BM_OracleSolve(benchmark::State& state) {
  const auto s = bench_scenario();
  const int n = static_cast<int>(state.range(0));
  caraeq::Rng rng(7);
  std::vector<double> init(n);
  for (auto& p : init) p = s.m() * s.w() * rng.uniform(0.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(caraeq::solve_fixed_point(init, s));
  }
}
BENCHMARK(BM_OracleSolve)->Arg(16)->Arg(64)->Arg(256)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
