#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "dcopt/capacity.hpp"
#include "dcopt/parallel.hpp"
#include "dcopt/random.hpp"
#include "dcopt/rel_ent.hpp"
#include "dcopt/report.hpp"
#include "dcopt/state_factory.hpp"
#include "dcopt/state_io.hpp"
#include "dcopt/weyl_ensemble.hpp"

namespace dcopt::cli {

namespace {

// Streams of the master seed: one per purpose so suites never share draws.
constexpr std::uint64_t kStateStream = 0;
constexpr std::uint64_t kExtraStream = 1;

StateSpec random_state_spec(const SuiteOptions& opt, std::size_t i) {
  StateSpec spec;
  spec.kind = StateKind::random_mixed;
  spec.d = opt.d;
  spec.seed = derive_seed(derive_seed(opt.seed, kStateStream), i);
  return spec;
}

Rng extra_rng(const SuiteOptions& opt, std::size_t i) {
  return make_rng(derive_seed(opt.seed, kExtraStream), i);
}

nlohmann::json failure(const StateSpec& spec, std::size_t index, double residual) {
  return {{"index", index}, {"state", state_spec_to_json(spec)}, {"residual", number(residual)}};
}

// Shared shape of the residual suites: per-trial residual against a bound.
SuiteResult residual_suite(const std::string& name, const SuiteOptions& opt, double default_tol,
                           const std::function<double(const DensityMatrix&, std::size_t)>& residual) {
  const double tol = opt.residual_tol.value_or(default_tol);
  std::vector<double> values(opt.trials);
  parallel_for(opt.trials, [&](std::size_t i) { values[i] = residual(build(random_state_spec(opt, i)), i); });

  SuiteResult out;
  nlohmann::json failures = nlohmann::json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // NaN or infinity counts as a failure too
    if (!(values[i] <= tol)) failures.push_back(failure(random_state_spec(opt, i), i, values[i]));
    worst = std::max(worst, std::isnan(values[i]) ? kInfinity : values[i]);
  }
  if (!failures.empty()) out.status = SuiteStatus::violated;
  out.report = {{"suite", name},           {"d", opt.d},
                {"seed", opt.seed},        {"trials", opt.trials},
                {"tolerance", tol},        {"max_residual", number(worst)},
                {"violations", failures.size()}, {"failures", std::move(failures)},
                {"status", to_string(out.status)}};
  return out;
}

SuiteResult lemma1_suite(const SuiteOptions& opt) {
  const double tol = opt.residual_tol.value_or(1e-10);
  std::vector<double> avg(opt.trials), identity(opt.trials);
  parallel_for(opt.trials, [&](std::size_t i) {
    const DensityMatrix rho = build(random_state_spec(opt, i));
    avg[i] = average_state_star(rho).residual;
    identity[i] = chi_star_breakdown(rho).entropy_identity_residual;
  });
  SuiteResult out;
  nlohmann::json failures = nlohmann::json::array();
  double worst_avg = 0.0, worst_identity = 0.0;
  for (std::size_t i = 0; i < opt.trials; ++i) {
    worst_avg = std::max(worst_avg, avg[i]);
    worst_identity = std::max(worst_identity, identity[i]);
    if (!(avg[i] <= tol && identity[i] <= tol)) {
      failures.push_back(failure(random_state_spec(opt, i), i, std::max(avg[i], identity[i])));
    }
  }
  if (!failures.empty()) out.status = SuiteStatus::violated;
  out.report = {{"suite", "lemma1"},
                {"d", opt.d},
                {"seed", opt.seed},
                {"trials", opt.trials},
                {"tolerance", tol},
                {"max_residual", number(worst_avg)},
                {"max_entropy_identity_residual", number(worst_identity)},
                {"violations", failures.size()},
                {"failures", std::move(failures)},
                {"status", to_string(out.status)}};
  return out;
}

SuiteResult theorem1_suite(const SuiteOptions& opt) {
  SuiteResult out;
  nlohmann::json runs = nlohmann::json::array();
  std::size_t violations = 0;
  for (std::size_t i = 0; i < opt.states; ++i) {
    const StateSpec spec = random_state_spec(opt, i);
    AuditConfig cfg;
    cfg.trials = opt.trials;
    cfg.seed = derive_seed(derive_seed(opt.seed, kExtraStream), i);
    cfg.tolerance = opt.audit_tol;
    if (opt.residual_tol) cfg.decomposition_tolerance = *opt.residual_tol;
    const AuditOutcome a = audit_theorem1(build(spec), cfg);
    violations += a.violations + a.decomposition_failures;
    nlohmann::json run = to_json(a);
    run["state"] = state_spec_to_json(spec);
    runs.push_back(std::move(run));
  }
  if (violations > 0) out.status = SuiteStatus::violated;
  out.report = {{"suite", "theorem1"},
                {"d", opt.d},
                {"seed", opt.seed},
                {"trials", opt.trials},
                {"states", opt.states},
                {"tolerance", opt.audit_tol},
                {"violations", violations},
                {"audits", std::move(runs)},
                {"status", to_string(out.status)}};
  return out;
}

SuiteResult theorem2_suite(const SuiteOptions& opt) {
  if (opt.d > 3) throw std::invalid_argument("theorem2 suite needs d <= 3");
  std::vector<BoundsReport> reports(opt.trials);
  parallel_for(opt.trials,
               [&](std::size_t i) { reports[i] = verify_theorem2(build(random_state_spec(opt, i)), {}, opt.bounds_tol); });

  SuiteResult out;
  nlohmann::json flagged = nlohmann::json::array();
  std::size_t holds = 0, inconclusive = 0, violated = 0, converged = 0;
  double max_gap = 0.0, min_lower_slack = kInfinity, min_upper_slack = kInfinity;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BoundsReport& r = reports[i];
    switch (r.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::inconclusive: ++inconclusive; break;
      case Verdict::violated: ++violated; break;
    }
    if (r.e_r.converged) {
      ++converged;
      max_gap = std::max(max_gap, r.e_r.gap().value_or(0.0));
    }
    min_lower_slack = std::min(min_lower_slack, r.chi_star - r.e_r.upper);
    min_upper_slack = std::min(min_upper_slack, r.e_r.lower.value_or(0.0) + r.log2_d - r.chi_star);
    if (r.verdict != Verdict::holds) {
      nlohmann::json row = to_json(r);
      row["index"] = i;
      row["state"] = state_spec_to_json(random_state_spec(opt, i));
      flagged.push_back(std::move(row));
    }
  }
  if (violated > 0) {
    out.status = SuiteStatus::violated;
  } else if (inconclusive > 0) {
    out.status = SuiteStatus::inconclusive;
  }
  out.report = {{"suite", "theorem2"},
                {"d", opt.d},
                {"seed", opt.seed},
                {"trials", opt.trials},
                {"tolerance", opt.bounds_tol},
                {"bracket", bracket_label(opt.d)},
                {"holds", holds},
                {"inconclusive", inconclusive},
                {"violations", violated},
                {"converged", converged},
                {"max_converged_gap", number(max_gap)},
                {"min_lower_bound_slack", number(min_lower_slack)},
                {"min_upper_bound_slack", number(min_upper_slack)},
                {"flagged", std::move(flagged)},
                {"status", to_string(out.status)}};
  return out;
}

}  // namespace

std::string to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::passed: return "passed";
    case SuiteStatus::inconclusive: return "inconclusive";
    case SuiteStatus::violated: return "violated";
  }
  return "violated";
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (opt.d < 2 || opt.d > 8) throw std::invalid_argument("verify: d must lie in 2..8");
  if (name == "lemma1") return lemma1_suite(opt);
  if (name == "lemma2") {
    // one Haar unitary per state plus the full Weyl set
    return residual_suite("lemma2", opt, 1e-8, [&](const DensityMatrix& rho, std::size_t i) {
      Rng rng = extra_rng(opt, i);
      std::vector<ComplexMatrix> unitaries = all_weyl(opt.d);
      unitaries.push_back(haar_unitary(opt.d, rng));
      const Lemma2Check c = verify_lemma2(rho, unitaries);
      return c.infinite > 0 ? kInfinity : c.max_residual;
    });
  }
  if (name == "donald") {
    return residual_suite("donald", opt, 1e-8, [&](const DensityMatrix& rho, std::size_t i) {
      Rng rng = extra_rng(opt, i);
      const int n = std::uniform_int_distribution<int>(1, 2 * opt.d * opt.d)(rng);
      const SignalEnsemble ensemble = random_ensemble(rho, n, rng);
      StateSpec sigma_spec;
      sigma_spec.kind = StateKind::random_mixed;
      sigma_spec.d = opt.d;
      sigma_spec.seed = rng();
      const DonaldCheck c = donald_check(ensemble, build(sigma_spec));
      return c.support_violation ? kInfinity : c.residual;
    });
  }
  if (name == "theorem1") return theorem1_suite(opt);
  if (name == "theorem2") return theorem2_suite(opt);
  throw std::invalid_argument("unknown suite \"" + name + "\"");
}

}  // namespace dcopt::cli
