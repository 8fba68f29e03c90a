// Seeded random sampling: Haar unitaries, Ginibre matrices, flat Dirichlet.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dcopt/operator_core.hpp"

namespace dcopt {

using Rng = std::mt19937_64;

/// Independent stream seed for (seed, stream) pairs, so parallel work is
/// reproducible regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Entries i.i.d. standard complex normal.
ComplexMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar unitary via QR of a Ginibre matrix with the phases of R's diagonal
/// absorbed into Q.
ComplexMatrix haar_unitary(int d, Rng& rng);

/// Uniformly distributed unit vector in C^d.
ComplexVector haar_vector(int d, Rng& rng);

/// Dirichlet(1, ..., 1) sample of length n.
std::vector<double> flat_dirichlet(int n, Rng& rng);

}  // namespace dcopt
