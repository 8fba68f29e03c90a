#include "dcopt/state_factory.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "dcopt/random.hpp"

namespace dcopt {

namespace {

constexpr std::array<std::pair<StateKind, const char*>, 9> kKindNames{{
    {StateKind::bell, "bell"},
    {StateKind::max_entangled, "max_entangled"},
    {StateKind::werner, "werner"},
    {StateKind::isotropic, "isotropic"},
    {StateKind::bell_diagonal, "bell_diagonal"},
    {StateKind::random_mixed, "random_mixed"},
    {StateKind::random_pure, "random_pure"},
    {StateKind::random_product, "random_product"},
    {StateKind::random_separable, "random_separable"},
}};

constexpr std::array<std::pair<BellLabel, const char*>, 4> kBellNames{{
    {BellLabel::psi_minus, "psi_minus"},
    {BellLabel::psi_plus, "psi_plus"},
    {BellLabel::phi_minus, "phi_minus"},
    {BellLabel::phi_plus, "phi_plus"},
}};

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("state spec: " + what);
}

double param_or(const StateSpec& spec, std::size_t i, double fallback) {
  return spec.params.size() > i ? spec.params[i] : fallback;
}

ComplexMatrix random_local_mixed(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  const ComplexMatrix m = g * g.adjoint();
  return m / m.trace().real();
}

}  // namespace

std::string to_string(StateKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<StateKind> parse_state_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

std::string to_string(BellLabel label) {
  for (const auto& [l, name] : kBellNames) {
    if (l == label) return name;
  }
  return "unknown";
}

std::optional<BellLabel> parse_bell_label(const std::string& name) {
  for (const auto& [l, n] : kBellNames) {
    if (name == n) return l;
  }
  return std::nullopt;
}

ComplexVector bell_vector(BellLabel label) {
  ComplexVector v = ComplexVector::Zero(4);
  const double h = 1.0 / std::sqrt(2.0);
  switch (label) {
    case BellLabel::psi_minus: v(1) = h; v(2) = -h; break;
    case BellLabel::psi_plus: v(1) = h; v(2) = h; break;
    case BellLabel::phi_minus: v(0) = h; v(3) = -h; break;
    case BellLabel::phi_plus: v(0) = h; v(3) = h; break;
  }
  return v;
}

ComplexVector max_entangled_vector(int d) {
  ComplexVector v = ComplexVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

DensityMatrix werner_state(double fidelity) {
  require(fidelity >= 0.0 && fidelity <= 1.0, "werner fidelity must lie in [0, 1]");
  const double rest = (1.0 - fidelity) / 3.0;
  return bell_diagonal_state(fidelity, rest, rest, rest);
}

DensityMatrix bell_diagonal_state(double l1, double l2, double l3, double l4) {
  for (double l : {l1, l2, l3, l4}) require(l >= 0.0, "Bell-diagonal weights must be non-negative");
  require(std::abs(l1 + l2 + l3 + l4 - 1.0) <= 1e-12, "Bell-diagonal weights must sum to 1");
  const ComplexMatrix m = l1 * projector(bell_vector(BellLabel::psi_minus)) +
                          l2 * projector(bell_vector(BellLabel::psi_plus)) +
                          l3 * projector(bell_vector(BellLabel::phi_minus)) +
                          l4 * projector(bell_vector(BellLabel::phi_plus));
  return DensityMatrix(m, Dims{2, 2});
}

DensityMatrix isotropic_state(int d, double fidelity) {
  require(d >= 2, "isotropic state needs d >= 2");
  require(fidelity >= 0.0 && fidelity <= 1.0, "isotropic fidelity must lie in [0, 1]");
  const ComplexMatrix phi = projector(max_entangled_vector(d));
  const ComplexMatrix m =
      fidelity * phi + (1.0 - fidelity) * (identity(d * d) - phi) / static_cast<double>(d * d - 1);
  return DensityMatrix(m, Dims{d, d});
}

DensityMatrix build(const StateSpec& spec) {
  const int d = spec.d;
  require(d >= 2, "d must be at least 2");
  const Dims dims{d, d};
  Rng rng = make_rng(spec.seed, static_cast<std::uint64_t>(spec.kind));
  switch (spec.kind) {
    case StateKind::bell:
      require(d == 2, "Bell states are two-qubit states (d = 2)");
      return DensityMatrix::pure(bell_vector(spec.bell), dims);
    case StateKind::max_entangled:
      return DensityMatrix::pure(max_entangled_vector(d), dims);
    case StateKind::werner:
      require(d == 2, "Werner family is defined for d = 2");
      require(spec.params.size() == 1, "werner takes one parameter F");
      return werner_state(spec.params[0]);
    case StateKind::isotropic:
      require(spec.params.size() == 1, "isotropic takes one parameter F");
      return isotropic_state(d, spec.params[0]);
    case StateKind::bell_diagonal:
      require(d == 2, "Bell-diagonal states are two-qubit states (d = 2)");
      require(spec.params.size() == 4, "bell_diagonal takes four weights");
      return bell_diagonal_state(spec.params[0], spec.params[1], spec.params[2], spec.params[3]);
    case StateKind::random_mixed: {
      const double rank = param_or(spec, 0, d * d);
      require(rank >= 1 && rank <= d * d && rank == std::floor(rank), "rank must be an integer in [1, d^2]");
      const ComplexMatrix g = ginibre(d * d, static_cast<int>(rank), rng);
      const ComplexMatrix m = g * g.adjoint();
      return DensityMatrix(m / m.trace().real(), dims);
    }
    case StateKind::random_pure:
      return DensityMatrix::pure(haar_vector(d * d, rng), dims);
    case StateKind::random_product: {
      const ComplexMatrix a = random_local_mixed(d, rng);
      const ComplexMatrix b = random_local_mixed(d, rng);
      return DensityMatrix(kron(a, b), dims);
    }
    case StateKind::random_separable: {
      const double k = param_or(spec, 0, 2 * d * d);
      require(k >= 1 && k == std::floor(k), "mixture size must be a positive integer");
      const int terms = static_cast<int>(k);
      const std::vector<double> w = flat_dirichlet(terms, rng);
      ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
      for (int i = 0; i < terms; ++i) {
        const ComplexVector a = haar_vector(d, rng);
        const ComplexVector b = haar_vector(d, rng);
        m += w[static_cast<std::size_t>(i)] * projector(kron(a, b));
      }
      return DensityMatrix(m, dims);
    }
  }
  throw std::invalid_argument("state spec: unknown kind");
}

SeparabilityStatus separability_status(const StateSpec& spec) {
  switch (spec.kind) {
    case StateKind::random_product:
    case StateKind::random_separable:
      return SeparabilityStatus::certified;
    case StateKind::werner:
    case StateKind::isotropic:
    case StateKind::bell_diagonal: {
      const DensityMatrix rho = build(spec);
      const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dims());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
      return es.eigenvalues()(0) >= -1e-12 ? SeparabilityStatus::ppt_only : SeparabilityStatus::unknown;
    }
    default:
      return SeparabilityStatus::unknown;
  }
}

bool is_certified_separable(const StateSpec& spec) {
  return separability_status(spec) == SeparabilityStatus::certified;
}

std::string to_string(SeparabilityStatus status) {
  switch (status) {
    case SeparabilityStatus::certified: return "certified";
    case SeparabilityStatus::ppt_only: return "ppt";
    case SeparabilityStatus::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace dcopt
