// Weyl (clock-and-shift) unitaries U_(p,q)|j> = exp(2 pi i p j / d) |j + q mod d>
// and ensembles of one-sided unitary signals (U (x) I) rho (U^dagger (x) I).
//
// Basis indices run over 0..d-1. Relabelling the kets to 1..d only multiplies
// each U_(p,q) by the global phase exp(2 pi i p / d), which cancels in every
// conjugated state.
#pragma once

#include <utility>
#include <vector>

#include "dcopt/operator_core.hpp"

namespace dcopt {

struct WeylIndex {
  int p = 0;
  int q = 0;
  int flat(int d) const { return p * d + q; }
  static WeylIndex from_flat(int flat, int d) { return {flat / d, flat % d}; }
};

ComplexMatrix weyl(int d, int p, int q);
inline ComplexMatrix weyl(int d, WeylIndex idx) { return weyl(d, idx.p, idx.q); }

/// All d^2 Weyl unitaries ordered by flat index p*d + q.
std::vector<ComplexMatrix> all_weyl(int d);

/// (u (x) I) rho (u^dagger (x) I). Throws on a size mismatch or non-unitary u.
DensityMatrix apply_signal(const DensityMatrix& rho, const ComplexMatrix& u);

/// sum_i U_i m U_i^dagger over all Weyl unitaries; equals d Tr(m) I.
ComplexMatrix twirl(const ComplexMatrix& m, int d);

struct Signal {
  ComplexMatrix unitary;
  double probability = 0.0;
};

/// Immutable ensemble {rho_i = (U_i (x) I) rho (U_i^dagger (x) I); p_i}. The
/// transformed states and their average are computed once on construction.
class SignalEnsemble {
 public:
  SignalEnsemble(DensityMatrix base, std::vector<Signal> signals);

  const DensityMatrix& base() const { return base_; }
  std::size_t size() const { return signals_.size(); }
  const Signal& signal(std::size_t i) const { return signals_[i]; }
  double probability(std::size_t i) const { return signals_[i].probability; }
  const DensityMatrix& state(std::size_t i) const { return states_[i]; }
  /// rho-bar = sum_i p_i rho_i.
  const DensityMatrix& average() const { return average_; }

 private:
  DensityMatrix base_;
  std::vector<Signal> signals_;
  std::vector<DensityMatrix> states_;
  DensityMatrix average_;
};

/// The equiprobable ensemble over all d^2 Weyl unitaries.
SignalEnsemble canonical_ensemble(const DensityMatrix& rho);

}  // namespace dcopt
