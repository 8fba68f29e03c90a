// Shared pieces of the E_R optimisers.
#pragma once

#include "dcopt/operator_core.hpp"

namespace dcopt::detail {

/// sigma -> S(rho||sigma) in bits for a fixed rho, without support
/// thresholds: weight of rho on a vanishing eigenvalue of sigma is charged
/// at log2 of a tiny floor, so the value grows steeply instead of switching
/// to +infinity. Used for line searches and descent tests.
class EntropyObjective {
 public:
  explicit EntropyObjective(const ComplexMatrix& rho);

  double value(const ComplexMatrix& sigma) const;
  double value(const Spectrum& sigma) const;
  const ComplexMatrix& rho() const { return rho_; }

 private:
  ComplexMatrix rho_;
  double neg_entropy_ = 0.0;  // -S(rho)
};

Spectrum eig(const ComplexMatrix& h);

}  // namespace dcopt::detail
