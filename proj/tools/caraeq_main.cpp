// Command-line front end: solve, partials, verify, oracle, sweep, compare.
// All structured output is JSON on stdout; diagnostics go to stderr.
// Exit codes: 0 success, 1 file/parse/usage, 2 inadmissible input,
// 3 internal cross-check failure, 4 certification failure, 5 oracle failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "caraeq/config_io.hpp"
#include "caraeq/experiments.hpp"
#include "caraeq/oracle.hpp"
#include "caraeq/sampling.hpp"
#include "caraeq/verification.hpp"
#include "caraeq/version.hpp"

namespace {

using nlohmann::json;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json flip_to_json(const caraeq::ThresholdFlipResult& f) {
  return {{"bracketed", f.bracketed},
          {"Lg_star", f.Lg_star},
          {"Lambda_at_star", f.Lambda_at_star},
          {"gap", f.gap},
          {"probe_offset", f.probe_offset},
          {"analytic_below", f.analytic_below},
          {"analytic_above", f.analytic_above},
          {"fd_below", f.fd_below},
          {"fd_above", f.fd_above},
          {"sign_flips", f.sign_flips},
          {"pass", f.pass}};
}

int cmd_solve(const std::string& config_path) {
  const auto cfg = caraeq::load_scenario_file(config_path);
  const auto s = caraeq::validate(cfg);
  const auto eq = caraeq::solve_equilibrium(s);
  const auto props = caraeq::check_propositions(s, eq);
  emit({{"scenario", caraeq::scenario_to_json(cfg)},
        {"equilibrium", caraeq::equilibrium_to_json(eq)},
        {"propositions", caraeq::propositions_to_json(props)},
        {"profit_threshold", caraeq::profit_threshold_lambda(s, eq)}});
  return 0;
}

int cmd_partials(const std::string& config_path, const std::string& method,
                 double step) {
  const auto cfg = caraeq::load_scenario_file(config_path);
  const auto s = caraeq::validate(cfg);
  if (method == "analytic") {
    emit({{"scenario", caraeq::scenario_to_json(cfg)},
          {"jacobian", caraeq::jacobian_to_json(caraeq::analytic_jacobian(s))}});
  } else if (method == "fd") {
    emit({{"scenario", caraeq::scenario_to_json(cfg)},
          {"jacobian", caraeq::jacobian_to_json(
                           caraeq::finite_difference_jacobian(s, step))}});
  } else {
    const auto eq = caraeq::solve_equilibrium(s);
    const auto ja = caraeq::analytic_jacobian(s);
    const auto jf = caraeq::finite_difference_jacobian(s, step);
    emit({{"scenario", caraeq::scenario_to_json(cfg)},
          {"analytic", caraeq::jacobian_to_json(ja)},
          {"finite_difference", caraeq::jacobian_to_json(jf)},
          {"max_discrepancy", caraeq::jacobian_discrepancy(ja, jf, eq)},
          {"agree", caraeq::jacobians_agree(ja, jf, eq)}});
  }
  return 0;
}

int cmd_verify_one(const std::string& config_path) {
  const auto cfg = caraeq::load_scenario_file(config_path);
  const auto s = caraeq::validate(cfg);
  const auto rep = caraeq::certify_theorems(s);
  emit({{"scenario", caraeq::scenario_to_json(cfg)},
        {"report", caraeq::theorem_report_to_json(rep)}});
  return rep.all_pass() ? 0 : 4;
}

int cmd_verify_sample(int count, std::uint64_t seed) {
  const auto sum = caraeq::verify_sample(seed, count);
  // Timing goes to stderr: stdout must be byte-identical across equal seeds.
  std::cerr << "verified " << sum.scenarios << " scenarios in "
            << sum.elapsed_seconds << " s\n";
  emit({{"seed", seed},
        {"scenarios", sum.scenarios},
        {"claims_checked", sum.claims_checked},
        {"claim_failures", sum.claim_failures},
        {"equality_checks", sum.equality_checks},
        {"equality_failures", sum.equality_failures},
        {"ranking_applicable", sum.t6_applicable},
        {"ranking_failures", sum.t6_failures},
        {"max_jacobian_discrepancy", sum.max_jacobian_discrepancy},
        {"jacobian_disagreements", sum.jacobian_disagreements},
        {"threshold_flip", flip_to_json(sum.flip)},
        {"failures", sum.failures},
        {"all_pass", sum.all_pass()}});
  return sum.all_pass() ? 0 : 4;
}

int cmd_oracle(const std::string& config_path, int n, std::uint64_t seed,
               const caraeq::SolverSettings& settings) {
  const auto cfg = caraeq::load_scenario_file(config_path);
  const auto s = caraeq::validate(cfg);
  const auto eq = caraeq::solve_equilibrium(s);

  // Random asymmetric start around marginal cost.
  caraeq::Rng rng(seed);
  std::vector<double> init(static_cast<std::size_t>(n));
  for (auto& p : init) p = s.m() * s.w() * rng.uniform(0.5, 2.0);

  const auto econ = caraeq::solve_fixed_point(init, s, settings);

  const double p_bar = econ.mean_price();
  const double q_bar = econ.mean_quantity();
  const double pi_bar = econ.mean_profit();
  const double total = eq.L + s.Lg();
  const double gross = (total * eq.q + s.g()) * eq.markup + s.F() * s.w();
  const double d_p = std::abs(p_bar - eq.p) / std::abs(eq.p);
  const double d_q = std::abs(q_bar - eq.q) / std::abs(eq.q);
  const double d_L = std::abs(econ.L - eq.L) / std::abs(eq.L);
  const double d_Pi =
      std::abs(pi_bar - eq.Pi) / std::max(std::abs(eq.Pi), gross);
  const double spread = caraeq::symmetry_gap(econ);

  const double tol_match = 1e-8;
  const bool match = d_p <= tol_match && d_q <= tol_match &&
                     d_L <= tol_match && d_Pi <= tol_match;

  emit({{"scenario", caraeq::scenario_to_json(cfg)},
        {"closed_form", caraeq::equilibrium_to_json(eq)},
        {"oracle",
         {{"n", econ.n},
          {"seed", seed},
          {"iterations", econ.iterations},
          {"converged", econ.converged},
          {"p_mean", p_bar},
          {"q_mean", q_bar},
          {"L", econ.L},
          {"Pi_mean", pi_bar},
          {"symmetry_gap", spread},
          {"local_profit_max", econ.local_profit_max},
          {"second_order_margin", econ.second_order_margin}}},
        {"deltas", {{"p", d_p}, {"q", d_q}, {"L", d_L}, {"Pi", d_Pi}}},
        {"match", match}});
  if (!match) {
    std::cerr << "oracle and closed form disagree beyond " << tol_match
              << "\n";
    return 5;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& grid_arg,
              const std::vector<std::string>& output_names,
              const std::string& out_path) {
  caraeq::SweepSpec spec;
  spec.base = caraeq::load_scenario_file(config_path);
  spec.axis = caraeq::axis_from_name(axis);

  std::stringstream gs(grid_arg);
  std::string tok;
  while (std::getline(gs, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw caraeq::Error("cannot parse grid value '" + tok + "'");
    }
    if (pos != tok.size()) {
      throw caraeq::Error("cannot parse grid value '" + tok + "'");
    }
    spec.grid.push_back(v);
  }

  if (output_names.empty()) {
    spec.outputs = {caraeq::SweepOutput::p, caraeq::SweepOutput::q,
                    caraeq::SweepOutput::L, caraeq::SweepOutput::Pi,
                    caraeq::SweepOutput::welfare};
  } else {
    for (const auto& name : output_names) {
      spec.outputs.push_back(caraeq::sweep_output_from_name(name));
    }
  }

  const auto result = caraeq::run_sweep(spec);

  std::ofstream csv(out_path);
  if (!csv) throw caraeq::Error("cannot open output file '" + out_path + "'");
  caraeq::write_sweep_csv(result, csv);
  csv.close();

  const std::string manifest_path = out_path + ".manifest.json";
  std::ofstream mf(manifest_path);
  if (!mf) {
    throw caraeq::Error("cannot open manifest file '" + manifest_path + "'");
  }
  mf << caraeq::sweep_manifest(result);
  mf.close();

  int ok = 0;
  for (const auto& row : result.rows) ok += row.status == "ok" ? 1 : 0;
  emit({{"rows", result.rows.size()},
        {"ok", ok},
        {"csv", out_path},
        {"manifest", manifest_path}});
  return 0;
}

int cmd_compare(const std::string& config_path, double target_L) {
  const auto cfg = caraeq::load_scenario_file(config_path);
  const auto cmp = caraeq::compare_policies(cfg, target_L);
  emit({{"scenario", caraeq::scenario_to_json(cfg)},
        {"target_L", cmp.target_L},
        {"baseline_L", cmp.baseline_L},
        {"purchases",
         {{"dose_g", cmp.purchases.dose},
          {"equilibrium", caraeq::equilibrium_to_json(cmp.purchases.eq)}}},
        {"public_employment",
         {{"dose_Lg", cmp.employment.dose},
          {"equilibrium", caraeq::equilibrium_to_json(cmp.employment.eq)}}},
        {"price_gap", cmp.purchases.eq.p - cmp.employment.eq.p},
        {"quantity_gap", cmp.employment.eq.q - cmp.purchases.eq.q}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric-equilibrium fiscal policy calculator"};
  app.set_version_flag("--version", std::string(caraeq::kVersion));
  app.require_subcommand(0, 1);

  bool quote_defaults = false;
  app.add_flag("--quote-defaults", quote_defaults,
               "print the default scenario config and exit");

  std::string config_path, method = "both", axis, grid_arg, out_path;
  std::vector<std::string> output_names;
  double step = 1e-6, target_L = 0.0;
  int sample_count = -1, n_firms = 64;
  std::uint64_t seed = 42;
  caraeq::SolverSettings settings;

  auto* solve = app.add_subcommand("solve", "solve the symmetric equilibrium");
  solve->add_option("config", config_path, "scenario JSON file")->required();

  auto* partials =
      app.add_subcommand("partials", "policy derivatives of the equilibrium");
  partials->add_option("config", config_path)->required();
  partials->add_option("--method", method, "analytic, fd, or both")
      ->check(CLI::IsMember({"analytic", "fd", "both"}));
  partials->add_option("--step", step, "finite-difference relative step");

  auto* verify =
      app.add_subcommand("verify", "certify the comparative-statics claims");
  auto* verify_cfg = verify->add_option("config", config_path);
  auto* verify_k =
      verify->add_option("--sample", sample_count, "number of drawn scenarios");
  verify->add_option("--seed", seed, "sampling seed");
  verify_cfg->excludes(verify_k);

  auto* oracle = app.add_subcommand(
      "oracle", "discrete-economy cross-check of the closed form");
  oracle->add_option("config", config_path)->required();
  oracle->add_option("--n", n_firms, "number of firms");
  oracle->add_option("--seed", seed, "price initialization seed");
  oracle->add_option("--tol", settings.tol, "convergence tolerance");
  oracle->add_option("--damping", settings.damping, "best-response damping");
  oracle->add_option("--max-iter", settings.max_iter, "iteration budget");

  auto* sweep = app.add_subcommand("sweep", "evaluate along one axis");
  sweep->add_option("config", config_path)->required();
  sweep->add_option("--axis", axis, "g, tau, Lg, w, N, m, F, or alpha")
      ->required();
  sweep->add_option("--grid", grid_arg, "comma-separated axis values")
      ->required();
  sweep->add_option("--outputs", output_names,
                    "columns: p, q, L, Pi, welfare, jacobian, theorems");
  sweep->add_option("--out", out_path, "CSV output path")->required();

  auto* compare = app.add_subcommand(
      "compare", "purchases vs public employment at equal total employment");
  compare->add_option("config", config_path)->required();
  compare->add_option("--target-L", target_L, "private employment target")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (quote_defaults) {
      emit(caraeq::scenario_to_json(caraeq::default_scenario()));
      return 0;
    }
    if (solve->parsed()) return cmd_solve(config_path);
    if (partials->parsed()) return cmd_partials(config_path, method, step);
    if (verify->parsed()) {
      if (verify_k->count() > 0) {
        if (sample_count <= 0) {
          std::cerr << "--sample must be a positive count\n";
          return 1;
        }
        return cmd_verify_sample(sample_count, seed);
      }
      if (config_path.empty()) {
        std::cerr << "verify needs a config file or --sample\n";
        return 1;
      }
      return cmd_verify_one(config_path);
    }
    if (oracle->parsed()) {
      if (n_firms < 2) {
        std::cerr << "--n must be at least 2\n";
        return 1;
      }
      return cmd_oracle(config_path, n_firms, seed, settings);
    }
    if (sweep->parsed()) {
      return cmd_sweep(config_path, axis, grid_arg, output_names, out_path);
    }
    if (compare->parsed()) return cmd_compare(config_path, target_L);
    std::cerr << app.help();
    return 1;
  } catch (const caraeq::InadmissibleParameters& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const caraeq::TargetBelowBaseline& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const caraeq::InadmissibleDose& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const caraeq::InternalInconsistency& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const caraeq::NonInteriorDemand& e) {
    std::cerr << e.what() << "\n";
    return 5;
  } catch (const caraeq::RootNotBracketed& e) {
    std::cerr << e.what() << "\n";
    return 5;
  } catch (const caraeq::NoConvergence& e) {
    std::cerr << e.what() << "\n";
    return 5;
  } catch (const caraeq::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
