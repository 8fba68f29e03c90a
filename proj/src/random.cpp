#include "dcopt/random.hpp"

#include <cmath>

namespace dcopt {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over the combined key
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(derive_seed(seed, stream)); }

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexVector haar_vector(int d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

std::vector<double> flat_dirichlet(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace dcopt
