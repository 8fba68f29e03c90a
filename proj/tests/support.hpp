// Shared helpers for the test binaries.
#pragma once

#include <cmath>
#include <cstdint>

#include "dcopt/operator_core.hpp"
#include "dcopt/random.hpp"
#include "dcopt/state_factory.hpp"

namespace testing {

using namespace dcopt;

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Singlet projector written out entry by entry in the |00>,|01>,|10>,|11> basis.
inline ComplexMatrix singlet_by_hand() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = 0.5;
  m(1, 2) = -0.5;
  m(2, 1) = -0.5;
  m(2, 2) = 0.5;
  return m;
}

inline DensityMatrix random_state(int d, std::uint64_t seed, int rank = 0) {
  StateSpec spec;
  spec.kind = StateKind::random_mixed;
  spec.d = d;
  spec.seed = seed;
  if (rank > 0) spec.params = {static_cast<double>(rank)};
  return build(spec);
}

inline DensityMatrix random_single(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  const ComplexMatrix m = g * g.adjoint();
  return DensityMatrix::single(m / m.trace().real());
}

inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace testing
