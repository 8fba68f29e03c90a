#include "dcopt/su_basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace dcopt {

namespace {

GeneratorBasis build_generators(int d) {
  GeneratorBasis basis;
  basis.d = d;
  const cplx i_unit(0.0, 1.0);
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      basis.lambdas.push_back(basis_projector(d, i, j) + basis_projector(d, j, i));
      basis.labels.push_back("u_{" + std::to_string(i) + "," + std::to_string(j) + "}");
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      basis.lambdas.push_back(i_unit * (basis_projector(d, i, j) - basis_projector(d, j, i)));
      basis.labels.push_back("v_{" + std::to_string(i) + "," + std::to_string(j) + "}");
    }
  }
  for (int k = 1; k <= d - 1; ++k) {
    ComplexMatrix w = ComplexMatrix::Zero(d, d);
    for (int i = 1; i <= k; ++i) w += basis_projector(d, i, i);
    w -= static_cast<double>(k) * basis_projector(d, k + 1, k + 1);
    basis.lambdas.push_back(-std::sqrt(2.0 / (k * (k + 1.0))) * w);
    basis.labels.push_back("w_" + std::to_string(k));
  }
  return basis;
}

// Tr_A[rho (a (x) I)] for a d (x) d operator.
ComplexMatrix reduce_with_a(const ComplexMatrix& rho, const ComplexMatrix& a, int d) {
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int m = 0; m < d; ++m) {
      if (a(m, i) != cplx(0.0)) out += a(m, i) * rho.block(i * d, m * d, d, d);
    }
  }
  return out;
}

double real_part_checked(cplx z) {
  if (std::abs(z.imag()) > 1e-12) {
    throw std::logic_error("decompose: coefficient has imaginary part " + std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace

ComplexMatrix basis_projector(int d, int i, int j) {
  if (i < 1 || i > d || j < 1 || j > d) throw std::out_of_range("basis_projector: label out of range");
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(i - 1, j - 1) = 1.0;
  return p;
}

const GeneratorBasis& generators(int d) {
  if (d < 2) throw std::invalid_argument("generators: d must be at least 2");
  static std::shared_mutex mutex;
  static std::map<int, std::unique_ptr<const GeneratorBasis>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return *it->second;
  }
  std::unique_lock lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<const GeneratorBasis>(build_generators(d));
  return *slot;
}

HSDecomposition decompose(const DensityMatrix& rho) {
  if (!rho.is_composite()) throw std::invalid_argument("decompose: state is not composite");
  const int d = rho.local_dim();
  const auto& lambdas = generators(d).lambdas;
  const int n = d * d - 1;
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix rho_b = partial_trace(m, rho.dims(), Subsystem::B);

  HSDecomposition hs{d, RealVector(n), RealVector(n), RealMatrix(n, n)};
  const double half_d = d / 2.0;
  const double quarter_d2 = d * d / 4.0;
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix x = reduce_with_a(m, lambdas[i], d);
    hs.r(i) = half_d * real_part_checked(x.trace());
    hs.s(i) = half_d * real_part_checked((rho_b * lambdas[i]).trace());
    for (int j = 0; j < n; ++j) {
      hs.t(i, j) = quarter_d2 * real_part_checked((x * lambdas[j]).trace());
    }
  }
  return hs;
}

DensityMatrix reconstruct(const HSDecomposition& hs) {
  const int d = hs.d;
  const int n = d * d - 1;
  if (d < 2 || hs.r.size() != n || hs.s.size() != n || hs.t.rows() != n || hs.t.cols() != n) {
    throw std::invalid_argument("reconstruct: coefficient shapes do not match d");
  }
  const auto& lambdas = generators(d).lambdas;
  const ComplexMatrix id = identity(d);
  ComplexMatrix local_a = ComplexMatrix::Zero(d, d);
  ComplexMatrix local_b = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    local_a += hs.r(i) * lambdas[i];
    local_b += hs.s(i) * lambdas[i];
  }
  ComplexMatrix m = identity(d * d) + kron(local_a, id) + kron(id, local_b);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix row = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < n; ++j) row += hs.t(i, j) * lambdas[j];
    m += kron(lambdas[i], row);
  }
  m /= static_cast<double>(d * d);
  try {
    return DensityMatrix(std::move(m), Dims{d, d});
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(std::string("coefficients outside state space: ") + e.what());
  }
}

}  // namespace dcopt
