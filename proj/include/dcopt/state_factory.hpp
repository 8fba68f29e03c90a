// Named and randomized test states on C^d (x) C^d.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcopt/operator_core.hpp"

namespace dcopt {

enum class StateKind {
  bell,
  max_entangled,
  werner,
  isotropic,
  bell_diagonal,
  random_mixed,
  random_pure,
  random_product,
  random_separable,
};

/// |Psi-> = (|01> - |10>)/sqrt2, |Psi+> = (|01> + |10>)/sqrt2,
/// |Phi+-> = (|00> +- |11>)/sqrt2, with |0> = spin up.
enum class BellLabel { psi_minus, psi_plus, phi_minus, phi_plus };

/// Parameters by kind:
///   werner         {F}                two qubits, F|Psi-><Psi-| + (1-F)/3 (other Bell projectors)
///   isotropic      {F}                F|Phi_d><Phi_d| + (1-F)(I - |Phi_d><Phi_d|)/(d^2-1)
///   bell_diagonal  {l1, l2, l3, l4}   weights on Psi-, Psi+, Phi-, Phi+
///   random_mixed   {} or {rank}       G G^dagger / Tr, G a d^2 x rank Ginibre matrix
///   random_separable {} or {k}        k Haar product vectors, Dirichlet weights (default k = 2 d^2)
/// bell, max_entangled, random_pure and random_product take no parameters.
struct StateSpec {
  StateKind kind = StateKind::bell;
  int d = 2;
  std::vector<double> params;
  std::uint64_t seed = 0;
  BellLabel bell = BellLabel::psi_minus;
};

std::string to_string(StateKind kind);
std::optional<StateKind> parse_state_kind(const std::string& name);
std::string to_string(BellLabel label);
std::optional<BellLabel> parse_bell_label(const std::string& name);

ComplexVector bell_vector(BellLabel label);
/// (1/sqrt d) sum_j |jj>.
ComplexVector max_entangled_vector(int d);

/// Deterministic in (spec, seed). Throws std::invalid_argument for invalid
/// parameters.
DensityMatrix build(const StateSpec& spec);

enum class SeparabilityStatus { certified, ppt_only, unknown };

/// certified only for kinds separable by construction; the closed families
/// report ppt_only when their built state has a positive partial transpose.
SeparabilityStatus separability_status(const StateSpec& spec);
bool is_certified_separable(const StateSpec& spec);
std::string to_string(SeparabilityStatus status);

/// Convenience constructors.
DensityMatrix werner_state(double fidelity);
DensityMatrix bell_diagonal_state(double l_psi_minus, double l_psi_plus, double l_phi_minus,
                                  double l_phi_plus);
DensityMatrix isotropic_state(int d, double fidelity);

}  // namespace dcopt
