#include "rel_ent_detail.hpp"

#include <algorithm>
#include <cmath>

namespace dcopt::detail {

namespace {
constexpr double kEigenFloor = 1e-300;
constexpr double kNoiseWeight = 1e-16;
}  // namespace

Spectrum eig(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0);
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

EntropyObjective::EntropyObjective(const ComplexMatrix& rho) : rho_(rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  neg_entropy_ = -entropy_of_eigenvalues(es.eigenvalues());
}

double EntropyObjective::value(const ComplexMatrix& sigma) const { return value(eig(sigma)); }

double EntropyObjective::value(const Spectrum& sigma) const {
  double cross = 0.0;
  for (Eigen::Index k = 0; k < sigma.eigenvalues.size(); ++k) {
    const auto w = sigma.eigenvectors.col(k);
    const double weight = w.dot(rho_ * w).real();
    if (weight <= kNoiseWeight) continue;
    cross += weight * std::log2(std::max(sigma.eigenvalues(k), kEigenFloor));
  }
  return neg_entropy_ - cross;
}

}  // namespace dcopt::detail
