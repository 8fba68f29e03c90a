#include "dcopt/rel_ent.hpp"

#include <algorithm>
#include <cmath>

#include "dcopt/capacity.hpp"
#include "dcopt/state_factory.hpp"

namespace dcopt {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::violated: return "violated";
  }
  return "inconclusive";
}

ERelResult relative_entropy_of_entanglement(const DensityMatrix& rho, const ErelConfig& config) {
  ERelResult result = e_r_upper(rho, config);
  if (rho.local_dim() <= 3) {
    const PptBound ppt = e_r_lower(rho, config, result.witness);
    // SEP is inside PPT, so the PPT certificate can never exceed the
    // separable upper bound; clamp only against rounding
    result.lower = std::min(ppt.lower, result.upper);
    // a closed certified bracket settles convergence on its own
    result.converged = (result.converged && ppt.converged) || result.upper - *result.lower <= config.gap_tolerance;
  }
  return result;
}

BoundsReport verify_theorem2(const DensityMatrix& rho, const ErelConfig& config, double tolerance) {
  const int d = rho.local_dim();
  if (d > 3) throw std::invalid_argument("verify_theorem2: needs both E_R bounds (d <= 3)");
  BoundsReport report;
  report.tolerance = tolerance;
  report.chi_star = chi_star(rho);
  report.log2_d = std::log2(static_cast<double>(d));
  report.e_r = relative_entropy_of_entanglement(rho, config);
  const double upper = report.e_r.upper;
  const double lower = report.e_r.lower.value_or(0.0);

  report.lower_bound_ok = upper <= report.chi_star + tolerance;
  report.upper_bound_ok = report.chi_star <= lower + report.log2_d + tolerance;
  report.pvp_ok = pvp_check(rho, report.e_r, tolerance).ok;

  if (report.lower_bound_ok && report.upper_bound_ok) {
    report.verdict = Verdict::holds;
  } else if (lower > report.chi_star + tolerance || report.chi_star > upper + report.log2_d + tolerance) {
    // the certified side of the bracket already breaks an inequality
    report.verdict = Verdict::violated;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

PvpCheck pvp_check(const DensityMatrix& rho, const ERelResult& e_r, double tolerance) {
  const double s = von_neumann_entropy(rho);
  const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
  const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
  PvpCheck out;
  out.lhs = std::max(sa - s, sb - s);
  out.e_r_upper = e_r.upper;
  out.e_r_lower = e_r.lower;
  out.ok = out.lhs <= e_r.upper + tolerance;
  if (e_r.lower && out.lhs <= *e_r.lower + tolerance) {
    out.verdict = Verdict::holds;
  } else if (!out.ok) {
    out.verdict = Verdict::violated;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

PvpCheck pvp_check(const DensityMatrix& rho, const ErelConfig& config, double tolerance) {
  if (rho.local_dim() > 3) throw std::invalid_argument("pvp_check: d <= 3 required");
  return pvp_check(rho, relative_entropy_of_entanglement(rho, config), tolerance);
}

BellDiagonalCheck bell_diag_equality_check(double lambda, const ErelConfig& config) {
  if (!(lambda >= 0.5 && lambda <= 1.0)) {
    throw std::invalid_argument("bell_diag_equality_check: lambda must lie in [1/2, 1]");
  }
  const DensityMatrix rho = bell_diagonal_state(lambda, 1.0 - lambda, 0.0, 0.0);
  const ERelResult e_r = relative_entropy_of_entanglement(rho, config);
  BellDiagonalCheck out;
  out.lambda = lambda;
  out.chi_star = chi_star(rho);
  out.e_r_upper = e_r.upper;
  out.e_r_lower = e_r.lower;
  out.residual = std::abs(out.chi_star - e_r.upper - 1.0);
  return out;
}

}  // namespace dcopt
