#include "caraeq/comparative_statics.hpp"

#include <cmath>
#include <sstream>

namespace caraeq {

namespace {

constexpr double kSignBand = 1e-9;

double band(double scale) { return kSignBand * std::max(1.0, std::abs(scale)); }

struct Outputs {
  double L, q, p, Pi;
};

Outputs solve_outputs(const ScenarioConfig& cfg) {
  auto eq = solve_equilibrium(validate(cfg));
  return {eq.L, eq.q, eq.p, eq.Pi};
}

bool admissible_at(const ScenarioConfig& base, Axis axis, double value) {
  ScenarioConfig cfg = base;
  set_axis(cfg, axis, value);
  return admissibility_violations(cfg).empty();
}

}  // namespace

double PolicyJacobian::entry(int row, int col) const {
  const double rows[4][3] = {{dL_dg, dL_dtau, dL_dLg},
                             {dq_dg, dq_dtau, dq_dLg},
                             {dp_dg, dp_dtau, dp_dLg},
                             {dPi_dg, dPi_dtau, dPi_dLg}};
  return rows[row][col];
}

const char* stencil_name(Stencil s) {
  switch (s) {
    case Stencil::none: return "none";
    case Stencil::central: return "central";
    case Stencil::forward: return "forward";
    case Stencil::backward: return "backward";
  }
  return "?";
}

int classify_sign(double value, double scale) {
  if (std::abs(value) <= band(scale)) return 0;
  return value > 0.0 ? 1 : -1;
}

bool derivatives_agree(double a, double f, double scale, double rel,
                       double absband) {
  const double diff = std::abs(a - f);
  return diff <= rel * std::max(std::abs(a), std::abs(f)) ||
         diff <= absband * std::max(1.0, std::abs(scale));
}

PolicyJacobian analytic_jacobian(const ValidatedScenario& s) {
  const double N = s.N(), m = s.m(), F = s.F(), alpha = s.alpha(), w = s.w();
  const double g = s.g(), tau = s.tau(), Lg = s.Lg();
  const double Nm = N * m, omt = 1.0 - tau;
  const double den = alpha + (Nm - alpha) * tau;
  const double curv = Nm + alpha * omt;

  const SymmetricEquilibrium eq = solve_equilibrium(s);
  const double total = eq.L + Lg;
  const double A = total * eq.q + g;       // per-firm output
  const double slack = total - alpha * A;  // resource slack (positive)
  const double unit_cost = m * w + alpha * omt * w / N;

  PolicyJacobian j;
  j.method = JacobianMethod::analytic;

  // Employment column of the affine map.
  j.dL_dg = Nm * Nm / den;
  j.dL_dtau = -Nm * Nm * (Lg + (Nm - alpha) * g + N * F) / (den * den);
  j.dL_dLg = N * omt * m / den;

  // Quantity responses; the tau response goes through the log derivative.
  j.dq_dg = omt / curv * alpha * (g * j.dL_dg - total) / (total * total);
  const double dlnq_dtau =
      (1.0 / (total - alpha * g) - 1.0 / total) * j.dL_dtau - Nm / (omt * curv);
  j.dq_dtau = eq.q * dlnq_dtau;
  j.dq_dLg = omt / curv * alpha * g * (j.dL_dLg + 1.0) / (total * total);

  // Price responses.
  const double dg_den = total - alpha * g;
  j.dp_dg = alpha * unit_cost * (total - g * j.dL_dg) / (dg_den * dg_den);
  const double combined = (N * (m * g + F) + Lg) * (N * F + Lg) /
                          ((1.0 - Nm * eq.q) * (1.0 - Nm * eq.q)) * j.dq_dtau;
  j.dp_dtau = m * w * alpha * combined / (slack * slack);
  j.dp_dLg =
      unit_cost * (-alpha * g * (j.dL_dLg + 1.0)) / (dg_den * dg_den);

  // Profit responses.
  const double dLLq_dg = omt * (Nm - alpha) / den;  // d[(L+Lg)q]/dg
  j.dPi_dg = (dLLq_dg + 1.0) * eq.markup + A * j.dp_dg;
  const double dLLq_dtau = j.dL_dtau * eq.q + total * j.dq_dtau;
  j.dPi_dtau = dLLq_dtau * eq.markup + A * j.dp_dtau;
  const double c_q = omt / den;  // d[(L+Lg)q]/dLg
  const double Fs = total - g * (2.0 * alpha + Nm / omt);
  const double Es = Nm * Fs / curv;
  j.dPi_dLg = alpha * m * w * A * (Es * c_q) / (slack * slack);
  return j;
}

PolicyJacobian finite_difference_jacobian(const ValidatedScenario& s,
                                          double h) {
  const ScenarioConfig& base = s.config();
  PolicyJacobian j;
  j.method = JacobianMethod::finite_difference;

  const Axis axes[3] = {Axis::g, Axis::tau, Axis::Lg};
  for (int col = 0; col < 3; ++col) {
    const Axis axis = axes[col];
    const double x0 = get_axis(base, axis);
    const double hx = h * std::max(1.0, std::abs(x0));

    auto at = [&](double x) {
      ScenarioConfig cfg = base;
      set_axis(cfg, axis, x);
      return solve_outputs(cfg);
    };

    Stencil stencil;
    Outputs d;
    if (admissible_at(base, axis, x0 - hx) &&
        admissible_at(base, axis, x0 + hx)) {
      stencil = Stencil::central;
      const Outputs lo = at(x0 - hx), hi = at(x0 + hx);
      d = {(hi.L - lo.L) / (2.0 * hx), (hi.q - lo.q) / (2.0 * hx),
           (hi.p - lo.p) / (2.0 * hx), (hi.Pi - lo.Pi) / (2.0 * hx)};
    } else if (admissible_at(base, axis, x0 + 2.0 * hx)) {
      stencil = Stencil::forward;
      const Outputs f0 = at(x0), f1 = at(x0 + hx), f2 = at(x0 + 2.0 * hx);
      auto one_sided = [&](double a, double b, double c) {
        return (-3.0 * a + 4.0 * b - c) / (2.0 * hx);
      };
      d = {one_sided(f0.L, f1.L, f2.L), one_sided(f0.q, f1.q, f2.q),
           one_sided(f0.p, f1.p, f2.p), one_sided(f0.Pi, f1.Pi, f2.Pi)};
    } else if (admissible_at(base, axis, x0 - 2.0 * hx)) {
      stencil = Stencil::backward;
      const Outputs f0 = at(x0), f1 = at(x0 - hx), f2 = at(x0 - 2.0 * hx);
      auto one_sided = [&](double a, double b, double c) {
        return (3.0 * a - 4.0 * b + c) / (2.0 * hx);
      };
      d = {one_sided(f0.L, f1.L, f2.L), one_sided(f0.q, f1.q, f2.q),
           one_sided(f0.p, f1.p, f2.p), one_sided(f0.Pi, f1.Pi, f2.Pi)};
    } else {
      std::ostringstream os;
      os << "no admissible finite-difference stencil for " << axis_name(axis)
         << " at " << x0 << " with step " << hx;
      throw PerturbationInadmissible(os.str());
    }

    j.stencils[col] = stencil;
    switch (col) {
      case 0: j.dL_dg = d.L; j.dq_dg = d.q; j.dp_dg = d.p; j.dPi_dg = d.Pi; break;
      case 1: j.dL_dtau = d.L; j.dq_dtau = d.q; j.dp_dtau = d.p; j.dPi_dtau = d.Pi; break;
      case 2: j.dL_dLg = d.L; j.dq_dLg = d.q; j.dp_dLg = d.p; j.dPi_dLg = d.Pi; break;
    }
  }
  return j;
}

double finite_difference_dL_dw(const ValidatedScenario& s, double h) {
  const double w0 = s.w();
  const double hw = h * std::max(1.0, std::abs(w0));
  ScenarioConfig lo = s.config(), hi = s.config();
  lo.market.w = w0 - hw;
  hi.market.w = w0 + hw;
  if (!admissibility_violations(lo).empty()) {
    throw PerturbationInadmissible("wage probe stepped out of the domain");
  }
  return (solve_outputs(hi).L - solve_outputs(lo).L) / (2.0 * hw);
}

ProfitResponseDiagnostics profit_response_diagnostics(
    const ValidatedScenario& s) {
  const double N = s.N(), m = s.m(), alpha = s.alpha();
  const double g = s.g(), tau = s.tau(), Lg = s.Lg();
  const double Nm = N * m, omt = 1.0 - tau;
  const double den = alpha + (Nm - alpha) * tau;
  const double curv = Nm + alpha * omt;

  const SymmetricEquilibrium eq = solve_equilibrium(s);
  const double total = eq.L + Lg;
  const double A = total * eq.q + g;
  const double c_q = omt / den;
  const double dL_dLg = N * omt * m / den;

  ProfitResponseDiagnostics d;
  d.D = 2.0 * total * c_q - A * (alpha * c_q + 1.0 + dL_dLg);
  d.E = 2.0 * total - A * (alpha + curv / omt);
  d.Fs = total - g * (2.0 * alpha + Nm / omt);
  d.Lambda = profit_threshold_lambda(s, eq);
  d.Fs_alt = (Lg - d.Lambda) / (1.0 - Nm * eq.q);
  return d;
}

namespace {

const char* sign_word(int s) { return s > 0 ? "positive" : (s < 0 ? "negative" : "zero"); }

void add_sign_claim(TheoremReport& rep, const std::string& group,
                    const std::string& claim, double analytic, double fd,
                    double scale, int want) {
  ClaimResult r;
  r.group = group;
  r.claim = claim;
  r.analytic = analytic;
  r.fd = fd;
  const int sa = classify_sign(analytic, scale);
  const int sf = classify_sign(fd, scale);
  r.pass = (sa == want) && (sf == want);
  if (!r.pass) {
    std::ostringstream os;
    os << "expected " << sign_word(want) << ", analytic " << analytic << " ("
       << sign_word(sa) << "), finite difference " << fd << " ("
       << sign_word(sf) << ")";
    r.note = os.str();
  }
  rep.claims.push_back(std::move(r));
}

void add_weak_claim(TheoremReport& rep, const std::string& group,
                    const std::string& claim, double analytic, double fd,
                    double scale, bool nonneg) {
  ClaimResult r;
  r.group = group;
  r.claim = claim;
  r.analytic = analytic;
  r.fd = fd;
  const int sa = classify_sign(analytic, scale);
  const int sf = classify_sign(fd, scale);
  r.pass = nonneg ? (sa >= 0 && sf >= 0) : (sa <= 0 && sf <= 0);
  if (!r.pass) {
    std::ostringstream os;
    os << "expected " << (nonneg ? "nonnegative" : "nonpositive")
       << ", analytic " << analytic << ", finite difference " << fd;
    r.note = os.str();
  }
  rep.claims.push_back(std::move(r));
}

}  // namespace

TheoremReport certify_theorems(const ValidatedScenario& s) {
  const SymmetricEquilibrium eq = solve_equilibrium(s);
  const PolicyJacobian ja = analytic_jacobian(s);
  const PolicyJacobian jf = finite_difference_jacobian(s);
  const double g = s.g(), Lg = s.Lg();

  const double sL = std::abs(eq.L), sq = std::abs(eq.q), sp = std::abs(eq.p),
               sPi = std::abs(eq.Pi);

  TheoremReport rep;

  add_sign_claim(rep, "employment response", "dL/dg > 0", ja.dL_dg, jf.dL_dg, sL, 1);
  add_sign_claim(rep, "employment response", "dL/dtau < 0", ja.dL_dtau, jf.dL_dtau, sL, -1);
  add_sign_claim(rep, "employment response", "dL/dLg > 0", ja.dL_dLg, jf.dL_dLg, sL, 1);

  add_sign_claim(rep, "quantity response", "dq/dg < 0", ja.dq_dg, jf.dq_dg, sq, -1);
  add_sign_claim(rep, "quantity response", "dq/dtau < 0", ja.dq_dtau, jf.dq_dtau, sq, -1);
  if (g == 0.0) {
    add_sign_claim(rep, "quantity response", "dq/dLg = 0 when g = 0",
                   ja.dq_dLg, jf.dq_dLg, sq, 0);
  } else {
    add_weak_claim(rep, "quantity response", "dq/dLg >= 0", ja.dq_dLg,
                   jf.dq_dLg, sq, true);
  }

  add_sign_claim(rep, "price response", "dp/dg > 0", ja.dp_dg, jf.dp_dg, sp, 1);
  add_sign_claim(rep, "price response", "dp/dtau < 0", ja.dp_dtau, jf.dp_dtau, sp, -1);
  if (g == 0.0) {
    add_sign_claim(rep, "price response", "dp/dLg = 0 when g = 0", ja.dp_dLg,
                   jf.dp_dLg, sp, 0);
  } else {
    add_weak_claim(rep, "price response", "dp/dLg <= 0", ja.dp_dLg, jf.dp_dLg,
                   sp, false);
  }

  add_sign_claim(rep, "profit response", "dPi/dg > 0", ja.dPi_dg, jf.dPi_dg, sPi, 1);
  add_sign_claim(rep, "profit response", "dPi/dtau < 0", ja.dPi_dtau, jf.dPi_dtau, sPi, -1);

  {
    // Trichotomy: the profit response to Lg carries the sign of Lg - Lambda.
    const double Lambda = profit_threshold_lambda(s, eq);
    const int want =
        classify_sign(Lg - Lambda, std::max(std::abs(Lg), std::abs(Lambda)));
    std::ostringstream claim;
    claim << "sign(dPi/dLg) = sign(Lg - Lambda) = " << sign_word(want);
    ClaimResult r;
    r.group = "profit threshold";
    r.claim = claim.str();
    r.analytic = ja.dPi_dLg;
    r.fd = jf.dPi_dLg;
    const int sa = classify_sign(ja.dPi_dLg, sPi);
    const int sf = classify_sign(jf.dPi_dLg, sPi);
    r.pass = (sa == want) && (sf == want);
    if (!r.pass) {
      std::ostringstream os;
      os << "Lg - Lambda = " << Lg - Lambda << " but analytic response "
         << ja.dPi_dLg << " (" << sign_word(sa) << "), finite difference "
         << jf.dPi_dLg << " (" << sign_word(sf) << ")";
      r.note = os.str();
    }
    rep.claims.push_back(std::move(r));
  }

  {
    // With alpha above the net-of-tax rate, purchases beat public hiring.
    ClaimResult r;
    r.group = "instrument ranking";
    r.claim = "dPi/dg > dPi/dLg when alpha > 1 - tau";
    r.analytic = ja.dPi_dg - ja.dPi_dLg;
    r.fd = jf.dPi_dg - jf.dPi_dLg;
    r.applicable = s.alpha() > 1.0 - s.tau();
    if (r.applicable) {
      const double scale =
          std::max(std::abs(ja.dPi_dg), std::abs(ja.dPi_dLg));
      r.pass = classify_sign(r.analytic, scale) == 1 &&
               classify_sign(r.fd, scale) == 1;
      if (!r.pass) {
        std::ostringstream os;
        os << "analytic gap " << r.analytic << ", finite-difference gap "
           << r.fd;
        r.note = os.str();
      }
    } else {
      r.pass = true;
      r.note = "hypothesis alpha > 1 - tau not met; ranking not claimed";
    }
    rep.claims.push_back(std::move(r));
  }

  for (const auto& c : rep.claims) {
    if (!c.applicable) continue;
    ++rep.checked;
    if (!c.pass) ++rep.failed;
  }
  return rep;
}

double jacobian_discrepancy(const PolicyJacobian& a, const PolicyJacobian& b,
                            const SymmetricEquilibrium& eq) {
  const double scales[4] = {std::abs(eq.L), std::abs(eq.q), std::abs(eq.p),
                            std::abs(eq.Pi)};
  double worst = 0.0;
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 3; ++col) {
      const double x = a.entry(row, col), y = b.entry(row, col);
      const double mag = std::max(std::abs(x), std::abs(y));
      if (mag <= band(scales[row])) continue;
      worst = std::max(worst, std::abs(x - y) / mag);
    }
  }
  return worst;
}

bool jacobians_agree(const PolicyJacobian& a, const PolicyJacobian& b,
                     const SymmetricEquilibrium& eq) {
  const double scales[4] = {std::abs(eq.L), std::abs(eq.q), std::abs(eq.p),
                            std::abs(eq.Pi)};
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 3; ++col) {
      if (!derivatives_agree(a.entry(row, col), b.entry(row, col),
                             scales[row])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace caraeq
