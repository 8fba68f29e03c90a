// Holevo capacity of unitary-signal ensembles and the optimal dense-coding
// capacity chi* of the equiprobable Weyl ensemble, with constructive checks
// of its structure and a randomized optimality audit.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcopt/operator_core.hpp"
#include "dcopt/random.hpp"
#include "dcopt/weyl_ensemble.hpp"

namespace dcopt {

/// S(rho-bar) - sum_i p_i S(rho_i).
double holevo_chi(const SignalEnsemble& ensemble);

/// sum_i p_i S(rho_i || rho-bar); algebraically equal to holevo_chi.
double holevo_chi_relative(const SignalEnsemble& ensemble);

struct AverageStateStar {
  DensityMatrix explicit_sum;  // d^-2 sum_i (U_i (x) I) rho (U_i^dagger (x) I)
  DensityMatrix closed_form;   // (1/d) I (x) Tr_A(rho)
  double residual = 0.0;       // max elementwise difference
};

AverageStateStar average_state_star(const DensityMatrix& rho);

struct ChiStarBreakdown {
  double chi_star = 0.0;  // S(avg*) - S(rho)
  double s_rho = 0.0;
  double s_avg = 0.0;     // S(avg*) from the explicit Weyl average
  double s_rho_b = 0.0;
  /// |S(avg*) - S(rho^B) - log2 d|
  double entropy_identity_residual = 0.0;
};

ChiStarBreakdown chi_star_breakdown(const DensityMatrix& rho);

/// chi* in bits. Throws std::logic_error if S(avg*) - S(rho) and
/// log2 d + S(rho^B) - S(rho) disagree by more than 1e-8.
double chi_star(const DensityMatrix& rho);

struct Lemma2Check {
  double max_residual = 0.0;    // max |S(omega || avg*) - chi*| over finite cases
  std::size_t infinite = 0;     // signals whose relative entropy came out infinite
  bool reduced_support = false; // rho^B (hence avg*) is rank-deficient
};

/// Maximal distance property: every (U (x) I) rho (U^dagger (x) I) sits at
/// relative entropy chi* from avg*.
Lemma2Check verify_lemma2(const DensityMatrix& rho, const std::vector<ComplexMatrix>& unitaries);

struct DonaldCheck {
  double residual = 0.0;
  bool support_violation = false;  // some term infinite; residual not meaningful
  double average_divergence = 0.0; // sum_k p_k S(rho_k || sigma)
  double chi = 0.0;                // sum_k p_k S(rho_k || rho-bar)
  double mean_divergence = 0.0;    // S(rho-bar || sigma)
};

/// Residual of sum_k p_k S(rho_k||sigma) = sum_k p_k S(rho_k||rho-bar) + S(rho-bar||sigma).
DonaldCheck donald_check(const SignalEnsemble& ensemble, const DensityMatrix& sigma);

/// n Haar-random signals with Dirichlet(1,...,1) weights.
SignalEnsemble random_ensemble(const DensityMatrix& rho, int n, Rng& rng);

struct AuditConfig {
  std::size_t trials = 1000;
  int max_signals = 0;  // 0 selects 2 d^2
  std::uint64_t seed = 1;
  double tolerance = 1e-7;
  double decomposition_tolerance = 1e-8;
};

struct AuditOutcome {
  std::size_t trials = 0;
  double chi_star = 0.0;
  double max_chi_found = 0.0;
  double margin = 0.0;  // chi_star - max_chi_found
  std::size_t violations = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  /// max over trials of |chi* - chi - S(rho-bar || avg*)|
  double max_decomposition_residual = 0.0;
  std::size_t decomposition_failures = 0;
  std::vector<std::size_t> offending_trials;
  bool passed() const { return violations == 0 && decomposition_failures == 0; }
};

/// Randomized check that no ensemble of unitary signals beats chi*. Trial k
/// draws from the stream (seed, k), so the outcome does not depend on the
/// number of worker threads.
AuditOutcome audit_theorem1(const DensityMatrix& rho, const AuditConfig& config = {});

struct CapacityReport {
  double chi = 0.0;  // Holevo quantity of the canonical ensemble, computed generically
  double chi_star = 0.0;
  double s_rho = 0.0;
  double s_avg = 0.0;
  double s_rho_b = 0.0;
  double lemma1_residual = 0.0;
  double lemma2_max_residual = 0.0;
  double donald_residual = 0.0;
  std::optional<AuditOutcome> audit;
};

CapacityReport capacity_report(const DensityMatrix& rho, std::optional<AuditConfig> audit = {});

}  // namespace dcopt
