// Spectral matrix functions used by the entropy optimisers.
#pragma once

#include "dcopt/operator_core.hpp"

namespace dcopt {

/// Divided differences of the natural logarithm on a spectrum,
/// Gamma_ij = (ln l_i - ln l_j) / (l_i - l_j), with 1/l_i on the diagonal and
/// for coincident pairs. Eigenvalues are floored at `floor` first.
RealMatrix log_divided_differences(const RealVector& eigenvalues, double floor);

/// Frechet derivative of the natural matrix logarithm at sigma in direction x
/// (Daleckii-Krein): V (Gamma o V^dagger x V) V^dagger.
ComplexMatrix log_frechet(const Spectrum& sigma, const ComplexMatrix& x, double floor = 1e-14);

/// Gradient of sigma -> S(rho||sigma) (bits) with respect to the
/// Hilbert-Schmidt inner product: -Dlog(sigma)[rho] / ln 2.
ComplexMatrix relative_entropy_gradient(const ComplexMatrix& rho, const Spectrum& sigma,
                                        double floor = 1e-14);

/// f(V diag(l) V^dagger) = V diag(f(l)) V^dagger for a real scalar function.
template <class F>
ComplexMatrix apply_spectral(const Spectrum& s, F&& f) {
  RealVector fl(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) fl(i) = f(s.eigenvalues(i));
  return s.eigenvectors * fl.asDiagonal() * s.eigenvectors.adjoint();
}

/// Euclidean projection of a real vector onto the probability simplex.
RealVector project_to_simplex(const RealVector& v);

/// Nearest (Frobenius) trace-one positive semidefinite matrix.
ComplexMatrix project_to_density(const ComplexMatrix& h);

}  // namespace dcopt
