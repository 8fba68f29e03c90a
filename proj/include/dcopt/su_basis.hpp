// Generalised Gell-Mann generators of SU(d) and the Hilbert-Schmidt
// coefficient form of a state on C^d (x) C^d:
//
//   rho = (I(x)I + sum_i r_i l_i(x)I + I(x)sum_i s_i l_i + sum_ij t_ij l_i(x)l_j) / d^2
//
// Generator order is fixed: every u_{i,j} (i<j, lexicographic), then every
// v_{i,j}, then w_1 ... w_{d-1}. NOTE the diagonal generators carry a leading
// minus sign, w_k = -sqrt(2/(k(k+1))) (P_11 + ... + P_kk - k P_{k+1,k+1}),
// so at d = 2 the basis is (sigma_x, sigma_y, -sigma_z). Coefficients in t
// are expressed in this frame.
#pragma once

#include <string>
#include <vector>

#include "dcopt/operator_core.hpp"

namespace dcopt {

struct GeneratorBasis {
  int d = 0;
  std::vector<ComplexMatrix> lambdas;  // d^2 - 1 traceless Hermitian matrices
  std::vector<std::string> labels;     // "u_{1,2}", ..., 1-based like the kets |1>..|d>
};

struct HSDecomposition {
  int d = 0;
  RealVector r;
  RealVector s;
  RealMatrix t;
};

/// P_{i,j} = |i><j| with 1-based labels.
ComplexMatrix basis_projector(int d, int i, int j);

/// Cached per d; safe to call from several threads. Throws for d < 2.
const GeneratorBasis& generators(int d);

HSDecomposition decompose(const DensityMatrix& rho);

/// Throws InvariantViolation ("coefficients outside state space") when the
/// assembled operator is not positive.
DensityMatrix reconstruct(const HSDecomposition& hs);

}  // namespace dcopt
