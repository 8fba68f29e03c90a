// Dense complex operator algebra and entropy functionals on C^dA (x) C^dB.
//
// All entropies are reported in bits. Matrices are plain Eigen values; a
// DensityMatrix is validated once on construction and immutable afterwards.
#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dcopt {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Numerical thresholds shared by every module. Defaults are the documented
/// constants; the CLI exposes overrides.
struct Tolerances {
  double hermiticity = 1e-12;         // max |rho - rho^dagger| element
  double trace = 1e-12;               // |Tr rho - 1|
  double negativity = 1e-10;          // smallest admissible eigenvalue is -negativity
  double support_eigenvalue = 1e-12;  // sigma eigenvalues below this span its kernel
  double support_leak = 1e-9;         // Tr[rho Pi_ker(sigma)] above this => +infinity
};

/// Raised when a matrix fails the DensityMatrix invariants.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dims {
  int a = 1;
  int b = 1;
  int total() const { return a * b; }
  bool composite() const { return b > 1; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

class DensityMatrix {
 public:
  /// The trivial one-dimensional state [1].
  DensityMatrix() : m_(ComplexMatrix::Ones(1, 1)), dims_{1, 1} {}
  /// Validates Hermiticity, unit trace and positivity; stores the
  /// Hermitian part. Throws InvariantViolation on failure.
  DensityMatrix(ComplexMatrix m, Dims dims, const Tolerances& tol = {});

  /// Single system, dims = (d, 1).
  static DensityMatrix single(ComplexMatrix m, const Tolerances& tol = {});
  /// Bipartite C^d (x) C^d.
  static DensityMatrix bipartite(ComplexMatrix m, const Tolerances& tol = {});
  /// |psi><psi| for a normalised (or normalisable) vector.
  static DensityMatrix pure(const ComplexVector& psi, Dims dims);

  const ComplexMatrix& matrix() const { return m_; }
  Dims dims() const { return dims_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  bool is_composite() const { return dims_.composite(); }
  /// Local dimension d of a symmetric d (x) d state.
  int local_dim() const;

 private:
  ComplexMatrix m_;
  Dims dims_;
};

struct Spectrum {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns
};

ComplexMatrix identity(int dim);

/// Kronecker product, factor a is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Reduced state on the kept factor.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);
/// Raw-matrix partial trace for operators that are not states.
ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep);

/// Partial transpose on factor B.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_error(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrised first;
/// a deviation above tol throws std::invalid_argument naming it.
Spectrum herm_eig(const ComplexMatrix& h, double tol = 1e-12);

/// Von Neumann entropy in bits of a spectrum of a density matrix;
/// eigenvalues in [-negativity, 0) are clipped to zero.
double entropy_of_eigenvalues(const RealVector& eigenvalues, double negativity = 1e-10);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho||sigma) in bits, or +infinity when rho leaks out of sigma's support.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol = {});

/// Same contract on raw trace-one positive matrices; used inside optimisers
/// where iterates are known to be states up to rounding.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                        const Tolerances& tol = {});

}  // namespace dcopt
