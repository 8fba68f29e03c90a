#include "dcopt/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcopt {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, Dims dims, const Tolerances& tol) : dims_(dims) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  if (dims.a < 1 || dims.b < 1 || dims.total() != m.rows()) {
    throw std::invalid_argument("DensityMatrix: factor dimensions do not match matrix size");
  }
  const double herm = hermiticity_error(m);
  if (herm > tol.hermiticity) {
    throw InvariantViolation("not Hermitian: max |rho - rho^dagger| = " + fmt_double(herm));
  }
  m_ = (m + m.adjoint()) / 2.0;
  const double tr_err = std::abs(m_.trace().real() - 1.0);
  if (tr_err > tol.trace) {
    throw InvariantViolation("trace differs from 1 by " + fmt_double(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  if (lo < -tol.negativity) {
    throw InvariantViolation("not positive semidefinite: minimum eigenvalue " + fmt_double(lo));
  }
}

DensityMatrix DensityMatrix::single(ComplexMatrix m, const Tolerances& tol) {
  const int d = static_cast<int>(m.rows());
  return DensityMatrix(std::move(m), Dims{d, 1}, tol);
}

DensityMatrix DensityMatrix::bipartite(ComplexMatrix m, const Tolerances& tol) {
  const int n = static_cast<int>(m.rows());
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) {
    throw std::invalid_argument("DensityMatrix::bipartite: size is not a perfect square");
  }
  return DensityMatrix(std::move(m), Dims{d, d}, tol);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, Dims dims) {
  const double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const ComplexVector v = psi / n;
  return DensityMatrix(v * v.adjoint(), dims);
}

int DensityMatrix::local_dim() const {
  if (dims_.a != dims_.b) {
    throw std::invalid_argument("state is not on C^d (x) C^d");
  }
  return dims_.a;
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep) {
  const int da = dims.a;
  const int db = dims.b;
  if (keep == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
  }
  ComplexMatrix out(da, da);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (!rho.is_composite()) {
    throw std::invalid_argument("partial_trace: state is not composite");
  }
  const Dims dims = rho.dims();
  ComplexMatrix reduced = partial_trace(rho.matrix(), dims, keep);
  const int d = keep == Subsystem::A ? dims.a : dims.b;
  return DensityMatrix(std::move(reduced), Dims{d, 1});
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims) {
  const int da = dims.a;
  const int db = dims.b;
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < da; ++k) {
      out.block(i * db, k * db, db, db) = m.block(i * db, k * db, db, db).transpose();
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a - b); }

double hermiticity_error(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u, identity(static_cast<int>(u.rows()))) <= tol;
}

Spectrum herm_eig(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("herm_eig: matrix is not square");
  const double dev = hermiticity_error(h);
  if (dev > tol) {
    throw std::invalid_argument("herm_eig: matrix is not Hermitian (max deviation " +
                                fmt_double(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0);
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

double entropy_of_eigenvalues(const RealVector& eigenvalues, double negativity) {
  double s = 0.0;
  for (double lam : eigenvalues) {
    if (lam < -negativity) {
      throw InvariantViolation("entropy: eigenvalue " + fmt_double(lam) + " below clipping window");
    }
    lam = std::clamp(lam, 0.0, 1.0);
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_of_eigenvalues(es.eigenvalues());
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma, const Tolerances& tol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(rho, Eigen::EigenvaluesOnly);
  const double s_rho = entropy_of_eigenvalues(rs.eigenvalues(), tol.negativity);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ss(sigma);
  const RealVector& mu = ss.eigenvalues();
  const ComplexMatrix& w = ss.eigenvectors();
  double leak = 0.0;
  double cross = 0.0;  // Tr[rho log2 sigma] on the support of sigma
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double weight = w.col(k).dot(rho * w.col(k)).real();
    if (mu(k) < tol.support_eigenvalue) {
      leak += weight;
    } else {
      cross += weight * std::log2(mu(k));
    }
  }
  if (leak > tol.support_leak) return kInfinity;
  return std::max(-s_rho - cross, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
  if (rho.dims() != sigma.dims()) throw std::invalid_argument("relative_entropy: dimension mismatch");
  return relative_entropy(rho.matrix(), sigma.matrix(), tol);
}

}  // namespace dcopt
