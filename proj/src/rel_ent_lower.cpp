#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "dcopt/matrix_functions.hpp"
#include "dcopt/rel_ent.hpp"
#include "rel_ent_detail.hpp"

namespace dcopt {

namespace {

constexpr double kGradientFloor = 1e-14;
constexpr double kInitialMixing = 1e-2;
// iterates are mixed with this much I/n after every projection so that the
// gradient stays finite; mixing with the identity preserves PPT
constexpr double kIterateFloor = 1e-9;
constexpr int kMaxBacktracks = 60;
constexpr int kCertificateEvery = 25;
// trial points whose projection has not settled are rejected
constexpr double kProjectionSlack = 1e-10;

struct DykstraResult {
  ComplexMatrix x;
  ComplexMatrix q;  // increment of the partial-transpose set, in its normal cone
  int iterations = 0;
  double residual = 0.0;
};

ComplexMatrix project_pt_density(const ComplexMatrix& w, Dims dims) {
  return partial_transpose(project_to_density(partial_transpose(w, dims)), dims);
}

// Dykstra for the nearest point of {tau >= 0, Tr = 1} cap {tau^Gamma >= 0, Tr = 1},
// written in dual form so the partial-transpose increment q can be warm started.
DykstraResult dykstra(const ComplexMatrix& z, Dims dims, ComplexMatrix q, int max_iterations,
                      double tolerance) {
  DykstraResult out;
  for (int it = 1; it <= max_iterations; ++it) {
    ComplexMatrix x = project_to_density(z - q);
    const ComplexMatrix p = z - q - x;
    const ComplexMatrix y = project_pt_density(z - p, dims);
    q = z - p - y;
    out.residual = max_abs_diff(x, y);
    out.x = std::move(x);
    out.iterations = it;
    if (out.residual <= tolerance) break;
  }
  out.q = std::move(q);
  return out;
}

ComplexMatrix mix_identity(const ComplexMatrix& m, double t) {
  const auto n = m.rows();
  return (1.0 - t) * m + t * ComplexMatrix::Identity(n, n) / static_cast<double>(n);
}

// Mixes in just enough identity to make sigma^Gamma positive.
ComplexMatrix make_ppt_feasible(const ComplexMatrix& sigma, Dims dims) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(partial_transpose(sigma, dims), Eigen::EigenvaluesOnly);
  const double deficit = -es.eigenvalues()(0);
  if (deficit <= 0.0) return sigma;
  const double n = static_cast<double>(sigma.rows());
  const double t = deficit / (deficit + 1.0 / n) * (1.0 + 1e-9);
  return mix_identity(sigma, std::min(t, 1.0));
}

double min_eigenvalue(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

ComplexMatrix psd_part(const ComplexMatrix& h) {
  const Spectrum s = detail::eig(h);
  return apply_spectral(s, [](double l) { return std::max(l, 0.0); });
}

// max over s in [0, s_max] of lambda_min(G - s Y^Gamma); concave in s.
double best_scaled_certificate(const ComplexMatrix& g, const ComplexMatrix& y_pt, double s_max) {
  auto neg = [&](double s) { return -min_eigenvalue(g - s * y_pt); };
  std::uintmax_t iters = 200;
  const auto [s, v] = boost::math::tools::brent_find_minima(neg, 0.0, s_max,
                                                            std::numeric_limits<double>::digits / 2, iters);
  (void)s;
  return std::max(-v, std::max(-neg(0.0), -neg(s_max)));
}

// Lagrangian lower bound on min over PPT of f, from the iterate sigma and the
// Dykstra increment q of its last projection (step eta).
double certificate(const ComplexMatrix& rho, const detail::EntropyObjective& objective,
                   const ComplexMatrix& sigma, const ComplexMatrix& q, double eta, Dims dims) {
  const auto n = sigma.rows();
  const ComplexMatrix g = relative_entropy_gradient(rho, detail::eig(sigma), kGradientFloor);
  const double mu = (g * sigma).trace().real();
  const double base = objective.value(sigma) - mu;
  double best = min_eigenvalue(g);
  {
    // multiplier recovered from the Dykstra increment
    const ComplexMatrix q_pt = partial_transpose(q, dims);
    const ComplexMatrix w = -min_eigenvalue(-q_pt) * ComplexMatrix::Identity(n, n) - q_pt;
    const ComplexMatrix y_pt = partial_transpose(psd_part(w / eta), dims);
    best = std::max(best, best_scaled_certificate(g, y_pt, 2.0));
  }
  {
    // stationarity on a full-rank iterate: Y^Gamma = G - mu I
    const ComplexMatrix y = psd_part(partial_transpose(g - mu * ComplexMatrix::Identity(n, n), dims));
    best = std::max(best, best_scaled_certificate(g, partial_transpose(y, dims), 2.0));
  }
  return std::max(0.0, base + best);
}

}  // namespace

ComplexMatrix project_to_ppt(const ComplexMatrix& z, Dims dims, int max_iterations, double tolerance) {
  const auto n = z.rows();
  return dykstra((z + z.adjoint()) / 2.0, dims, ComplexMatrix::Zero(n, n), max_iterations, tolerance).x;
}

PptBound e_r_lower(const DensityMatrix& rho, const ErelConfig& config, const std::optional<DensityMatrix>& start) {
  if (!rho.is_composite()) throw std::invalid_argument("e_r_lower: state is not composite");
  const int d = rho.local_dim();
  if (d > 3) throw std::invalid_argument("e_r_lower: local dimension above 3 is not supported");
  const Dims dims = rho.dims();
  const int n = d * d;
  const detail::EntropyObjective objective(rho.matrix());

  ComplexMatrix sigma;
  if (start) {
    if (start->dims() != dims) throw std::invalid_argument("e_r_lower: start state has the wrong dimensions");
    sigma = mix_identity(make_ppt_feasible(start->matrix(), dims), kIterateFloor);
  } else {
    sigma = mix_identity(kron(partial_trace(rho, Subsystem::A).matrix(), partial_trace(rho, Subsystem::B).matrix()),
                         kInitialMixing);
  }
  double f = objective.value(sigma);
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  double eta = 1.0;
  double q_eta = eta;

  PptBound out;
  int it = 0;
  for (; it < config.ppt_max_iterations; ++it) {
    const ComplexMatrix g = relative_entropy_gradient(rho.matrix(), detail::eig(sigma), kGradientFloor);
    bool accepted = false;
    ComplexMatrix x;
    double fx = f;
    DykstraResult proj;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      proj = dykstra(sigma - eta * g, dims, q * (eta / q_eta), config.dykstra_max_iterations,
                     config.dykstra_tolerance);
      x = mix_identity(proj.x, kIterateFloor);
      fx = objective.value(x);
      const ComplexMatrix diff = x - sigma;
      const double model = f + (g.adjoint() * diff).trace().real() + diff.squaredNorm() / (2.0 * eta);
      if (proj.residual <= kProjectionSlack && std::isfinite(fx) && fx <= model + 1e-15 * std::max(1.0, std::abs(f))) {
        accepted = true;
        break;
      }
      eta /= 2.0;
    }
    if (!accepted) break;
    q = proj.q;
    q_eta = eta;
    const double step = (x - sigma).norm() / eta;
    sigma = std::move(x);
    f = fx;
    if (step <= config.ppt_tolerance ||
        ((it + 1) % kCertificateEvery == 0 &&
         f - certificate(rho.matrix(), objective, sigma, q, q_eta, dims) <= config.ppt_gap_tolerance)) {
      out.converged = true;
      ++it;
      break;
    }
    eta *= 2.0;
  }
  out.iterations = it;
  out.lower = certificate(rho.matrix(), objective, sigma, q, q_eta, dims);

  const ComplexMatrix feasible = make_ppt_feasible(sigma, dims);
  out.sigma = DensityMatrix((feasible + feasible.adjoint()) / 2.0, dims);
  out.primal = relative_entropy(rho, out.sigma);
  return out;
}

}  // namespace dcopt
