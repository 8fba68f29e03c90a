#include "dcopt/weyl_ensemble.hpp"

#include <cmath>
#include <numbers>

namespace dcopt {

namespace {

DensityMatrix average_of(const std::vector<DensityMatrix>& states, const std::vector<Signal>& signals,
                         Dims dims) {
  ComplexMatrix avg = ComplexMatrix::Zero(dims.total(), dims.total());
  for (std::size_t i = 0; i < states.size(); ++i) avg += signals[i].probability * states[i].matrix();
  return DensityMatrix(std::move(avg), dims);
}

std::vector<DensityMatrix> conjugate_all(const DensityMatrix& base, const std::vector<Signal>& signals) {
  if (signals.empty()) throw std::invalid_argument("SignalEnsemble: no signals");
  double total = 0.0;
  for (const auto& s : signals) {
    if (!(s.probability >= 0.0)) throw std::invalid_argument("SignalEnsemble: negative probability");
    total += s.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("SignalEnsemble: probabilities do not sum to 1");
  }
  std::vector<DensityMatrix> states;
  states.reserve(signals.size());
  for (const auto& s : signals) states.push_back(apply_signal(base, s.unitary));
  return states;
}

}  // namespace

ComplexMatrix weyl(int d, int p, int q) {
  if (d < 1 || p < 0 || p >= d || q < 0 || q >= d) {
    throw std::out_of_range("weyl: index (p, q) out of range for dimension d");
  }
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    // reduce p*j mod d before forming the angle to keep the phase exact
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((p * j) % d) / d;
    u((j + q) % d, j) = std::polar(1.0, angle);
  }
  return u;
}

std::vector<ComplexMatrix> all_weyl(int d) {
  if (d < 2) throw std::invalid_argument("all_weyl: d must be at least 2");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (int flat = 0; flat < d * d; ++flat) out.push_back(weyl(d, WeylIndex::from_flat(flat, d)));
  return out;
}

DensityMatrix apply_signal(const DensityMatrix& rho, const ComplexMatrix& u) {
  const Dims dims = rho.dims();
  if (u.rows() != dims.a || u.cols() != dims.a) {
    throw std::invalid_argument("apply_signal: unitary does not act on factor A");
  }
  if (!is_unitary(u, 1e-10)) throw std::invalid_argument("apply_signal: matrix is not unitary");
  const ComplexMatrix full = kron(u, identity(dims.b));
  return DensityMatrix(full * rho.matrix() * full.adjoint(), dims);
}

ComplexMatrix twirl(const ComplexMatrix& m, int d) {
  if (m.rows() != d || m.cols() != d) throw std::invalid_argument("twirl: matrix is not d x d");
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& u : all_weyl(d)) out += u * m * u.adjoint();
  return out;
}

SignalEnsemble::SignalEnsemble(DensityMatrix base, std::vector<Signal> signals)
    : base_(std::move(base)),
      signals_(std::move(signals)),
      states_(conjugate_all(base_, signals_)),
      average_(average_of(states_, signals_, base_.dims())) {}

SignalEnsemble canonical_ensemble(const DensityMatrix& rho) {
  const int d = rho.dims().a;
  const double p = 1.0 / (d * d);
  std::vector<Signal> signals;
  for (auto& u : all_weyl(d)) signals.push_back({std::move(u), p});
  return SignalEnsemble(rho, std::move(signals));
}

}  // namespace dcopt
