#include "dcopt/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "dcopt/parallel.hpp"

namespace dcopt {

double holevo_chi(const SignalEnsemble& ensemble) {
  double mean_entropy = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    mean_entropy += ensemble.probability(i) * von_neumann_entropy(ensemble.state(i));
  }
  return von_neumann_entropy(ensemble.average()) - mean_entropy;
}

double holevo_chi_relative(const SignalEnsemble& ensemble) {
  double chi = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    if (ensemble.probability(i) == 0.0) continue;
    chi += ensemble.probability(i) * relative_entropy(ensemble.state(i), ensemble.average());
  }
  return chi;
}

AverageStateStar average_state_star(const DensityMatrix& rho) {
  if (!rho.is_composite()) throw std::invalid_argument("average_state_star: state is not composite");
  const int d = rho.local_dim();
  const SignalEnsemble star = canonical_ensemble(rho);
  const DensityMatrix rho_b = partial_trace(rho, Subsystem::B);
  DensityMatrix closed(kron(identity(d), rho_b.matrix()) / static_cast<double>(d), rho.dims());
  const double residual = max_abs_diff(star.average().matrix(), closed.matrix());
  if (residual > 1e-8) {
    throw std::logic_error("average_state_star: Weyl average deviates from (1/d) I (x) rho^B");
  }
  return {star.average(), std::move(closed), residual};
}

ChiStarBreakdown chi_star_breakdown(const DensityMatrix& rho) {
  const int d = rho.local_dim();
  const AverageStateStar avg = average_state_star(rho);
  ChiStarBreakdown out;
  out.s_rho = von_neumann_entropy(rho);
  out.s_avg = von_neumann_entropy(avg.explicit_sum);
  out.s_rho_b = von_neumann_entropy(partial_trace(rho, Subsystem::B));
  out.chi_star = out.s_avg - out.s_rho;
  out.entropy_identity_residual = std::abs(out.s_avg - out.s_rho_b - std::log2(static_cast<double>(d)));
  return out;
}

double chi_star(const DensityMatrix& rho) {
  const ChiStarBreakdown b = chi_star_breakdown(rho);
  if (b.entropy_identity_residual > 1e-8) {
    throw std::logic_error("chi_star: S(avg*) disagrees with S(rho^B) + log2 d");
  }
  return b.chi_star;
}

Lemma2Check verify_lemma2(const DensityMatrix& rho, const std::vector<ComplexMatrix>& unitaries) {
  const AverageStateStar avg = average_state_star(rho);
  const double chi = chi_star(rho);
  Lemma2Check out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(partial_trace(rho, Subsystem::B).matrix(),
                                                  Eigen::EigenvaluesOnly);
  out.reduced_support = es.eigenvalues()(0) < Tolerances{}.support_eigenvalue;
  for (const auto& u : unitaries) {
    const double s = relative_entropy(apply_signal(rho, u), avg.explicit_sum);
    if (!std::isfinite(s)) {
      ++out.infinite;
      continue;
    }
    out.max_residual = std::max(out.max_residual, std::abs(s - chi));
  }
  return out;
}

DonaldCheck donald_check(const SignalEnsemble& ensemble, const DensityMatrix& sigma) {
  DonaldCheck out;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const double p = ensemble.probability(k);
    if (p == 0.0) continue;
    out.average_divergence += p * relative_entropy(ensemble.state(k), sigma);
    out.chi += p * relative_entropy(ensemble.state(k), ensemble.average());
  }
  out.mean_divergence = relative_entropy(ensemble.average(), sigma);
  if (!std::isfinite(out.average_divergence) || !std::isfinite(out.mean_divergence)) {
    out.support_violation = true;
    out.residual = 0.0;
    return out;
  }
  out.residual = std::abs(out.average_divergence - out.chi - out.mean_divergence);
  return out;
}

SignalEnsemble random_ensemble(const DensityMatrix& rho, int n, Rng& rng) {
  const int d = rho.dims().a;
  std::vector<Signal> signals;
  signals.reserve(static_cast<std::size_t>(n));
  const std::vector<double> weights = flat_dirichlet(n, rng);
  for (int i = 0; i < n; ++i) signals.push_back({haar_unitary(d, rng), weights[static_cast<std::size_t>(i)]});
  return SignalEnsemble(rho, std::move(signals));
}

AuditOutcome audit_theorem1(const DensityMatrix& rho, const AuditConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("audit_theorem1: trials must be at least 1");
  const int d = rho.local_dim();
  const int max_signals = config.max_signals > 0 ? config.max_signals : 2 * d * d;
  const double chi_opt = chi_star(rho);
  const DensityMatrix avg_star = average_state_star(rho).explicit_sum;

  std::vector<double> chis(config.trials);
  std::vector<double> residuals(config.trials);
  parallel_for(config.trials, [&](std::size_t trial) {
    Rng rng = make_rng(config.seed, trial);
    std::uniform_int_distribution<int> size_dist(1, max_signals);
    const SignalEnsemble ensemble = random_ensemble(rho, size_dist(rng), rng);
    const double chi = holevo_chi(ensemble);
    const double gap = relative_entropy(ensemble.average(), avg_star);
    chis[trial] = chi;
    // supp(rho-bar) always lies inside supp(avg*), so an infinite gap is a failure
    residuals[trial] = std::isfinite(gap) ? std::abs(chi_opt - chi - gap) : kInfinity;
  });

  AuditOutcome out;
  out.trials = config.trials;
  out.chi_star = chi_opt;
  out.seed = config.seed;
  out.tolerance = config.tolerance;
  out.max_chi_found = *std::max_element(chis.begin(), chis.end());
  out.margin = chi_opt - out.max_chi_found;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const bool beats = chis[t] > chi_opt + config.tolerance;
    const bool broken = residuals[t] > config.decomposition_tolerance;
    if (beats) ++out.violations;
    if (broken) ++out.decomposition_failures;
    if (beats || broken) out.offending_trials.push_back(t);
    out.max_decomposition_residual = std::max(out.max_decomposition_residual, residuals[t]);
  }
  return out;
}

CapacityReport capacity_report(const DensityMatrix& rho, std::optional<AuditConfig> audit) {
  const int d = rho.local_dim();
  const SignalEnsemble star = canonical_ensemble(rho);
  const ChiStarBreakdown b = chi_star_breakdown(rho);
  CapacityReport r;
  r.chi = holevo_chi(star);
  r.chi_star = b.chi_star;
  r.s_rho = b.s_rho;
  r.s_avg = b.s_avg;
  r.s_rho_b = b.s_rho_b;
  r.lemma1_residual = average_state_star(rho).residual;
  r.lemma2_max_residual = verify_lemma2(rho, all_weyl(d)).max_residual;
  const DensityMatrix mixed(identity(d * d) / static_cast<double>(d * d), rho.dims());
  r.donald_residual = donald_check(star, mixed).residual;
  if (audit) r.audit = audit_theorem1(rho, *audit);
  return r;
}

}  // namespace dcopt
