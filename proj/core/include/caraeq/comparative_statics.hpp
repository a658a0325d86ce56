#ifndef CARAEQ_COMPARATIVE_STATICS_HPP
#define CARAEQ_COMPARATIVE_STATICS_HPP

#include <array>
#include <string>
#include <vector>

#include "caraeq/closed_form.hpp"
#include "caraeq/scenario.hpp"

namespace caraeq {

enum class JacobianMethod { analytic, finite_difference };
enum class Stencil { none, central, forward, backward };

const char* stencil_name(Stencil s);

/// All twelve policy derivatives of the equilibrium outputs.
/// Rows: L, q, p, Pi. Columns: g, tau, Lg.
struct PolicyJacobian {
  double dL_dg = 0, dL_dtau = 0, dL_dLg = 0;
  double dq_dg = 0, dq_dtau = 0, dq_dLg = 0;
  double dp_dg = 0, dp_dtau = 0, dp_dLg = 0;
  double dPi_dg = 0, dPi_dtau = 0, dPi_dLg = 0;
  JacobianMethod method = JacobianMethod::analytic;
  std::array<Stencil, 3> stencils{Stencil::none, Stencil::none, Stencil::none};

  double entry(int row, int col) const;  // row in [0,4): L,q,p,Pi; col: g,tau,Lg
};

PolicyJacobian analytic_jacobian(const ValidatedScenario& s);

/// Finite-difference Jacobian with relative step h*max(1,|x|); falls back to
/// second-order one-sided stencils at the g=0 / Lg=0 / tau boundaries (the
/// choice is recorded per column).
PolicyJacobian finite_difference_jacobian(const ValidatedScenario& s,
                                          double h = 1e-6);

/// Wage probe: central finite difference of private employment in w
/// (analytically zero).
double finite_difference_dL_dw(const ValidatedScenario& s, double h = 1e-6);

/// Intermediate quantities behind the profit response to public employment.
/// D = E * d((L+Lg)q)/dLg and E = Nm*Fs/(Nm + alpha(1-tau)); the sign of all
/// three matches the sign of Lg - Lambda.
struct ProfitResponseDiagnostics {
  double D = 0.0;
  double E = 0.0;
  double Fs = 0.0;        // direct evaluation
  double Fs_alt = 0.0;    // via (Lg - Lambda)/(1 - N m q)
  double Lambda = 0.0;
};

ProfitResponseDiagnostics profit_response_diagnostics(
    const ValidatedScenario& s);

/// One sign/ordering claim, checked against both derivative routes.
struct ClaimResult {
  std::string group;      // which result family the claim belongs to
  std::string claim;      // human-readable statement
  double analytic = 0.0;
  double fd = 0.0;
  bool applicable = true;
  bool pass = false;
  std::string note;
};

struct TheoremReport {
  std::vector<ClaimResult> claims;
  int checked = 0;
  int failed = 0;
  bool all_pass() const { return failed == 0; }
};

/// Certifies every signed comparative-statics claim at the given scenario,
/// requiring agreement from both the analytic and finite-difference routes.
TheoremReport certify_theorems(const ValidatedScenario& s);

/// Sign classification with an absolute band 1e-9*max(1,|scale|) around zero.
int classify_sign(double value, double scale);

/// Two-tier agreement: |a-f| <= rel*max(|a|,|f|) or |a-f| <= band*max(1,|scale|).
bool derivatives_agree(double a, double f, double scale, double rel = 1e-6,
                       double band = 1e-9);

/// Largest raw relative discrepancy over entries whose magnitude exceeds the
/// zero band; band-level entries are compared absolutely and skipped here.
double jacobian_discrepancy(const PolicyJacobian& a, const PolicyJacobian& b,
                            const SymmetricEquilibrium& eq);

/// True if every entry satisfies derivatives_agree at the default tolerances.
bool jacobians_agree(const PolicyJacobian& a, const PolicyJacobian& b,
                     const SymmetricEquilibrium& eq);

}  // namespace caraeq

#endif
