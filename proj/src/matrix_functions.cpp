#include "dcopt/matrix_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace dcopt {

RealMatrix log_divided_differences(const RealVector& eigenvalues, double floor) {
  const Eigen::Index n = eigenvalues.size();
  RealVector l = eigenvalues.cwiseMax(floor);
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0 / l(i);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double diff = l(i) - l(j);
      // log1p keeps nearly degenerate pairs accurate
      const double v = diff == 0.0 ? 1.0 / l(i) : std::log1p(diff / l(j)) / diff;
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

ComplexMatrix log_frechet(const Spectrum& sigma, const ComplexMatrix& x, double floor) {
  const ComplexMatrix& v = sigma.eigenvectors;
  ComplexMatrix inner = v.adjoint() * x * v;
  inner = inner.cwiseProduct(log_divided_differences(sigma.eigenvalues, floor).cast<cplx>());
  return v * inner * v.adjoint();
}

ComplexMatrix relative_entropy_gradient(const ComplexMatrix& rho, const Spectrum& sigma, double floor) {
  ComplexMatrix g = log_frechet(sigma, rho, floor) * (-1.0 / std::numbers::ln2);
  return (g + g.adjoint()) / 2.0;
}

RealVector project_to_simplex(const RealVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

ComplexMatrix project_to_density(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0);
  const RealVector p = project_to_simplex(es.eigenvalues());
  return es.eigenvectors() * p.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace dcopt
