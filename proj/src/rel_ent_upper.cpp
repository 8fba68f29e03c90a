#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>

#include "dcopt/matrix_functions.hpp"
#include "dcopt/random.hpp"
#include "dcopt/rel_ent.hpp"
#include "rel_ent_detail.hpp"

namespace dcopt {

namespace {

constexpr double kInitialMixing = 1e-2;
constexpr double kGradientFloor = 1e-14;
constexpr int kResyncEvery = 32;
constexpr int kMaxStalls = 3;
constexpr std::size_t kWarmAtoms = 4;
constexpr int kPolishEvery = 20;
constexpr int kPolishIterations = 300;

struct Atom {
  ComplexVector a;
  ComplexVector b;
  ComplexVector ab;
  double weight = 0.0;
};

// b^dagger G_(i,k) b for every block (i, k): the operator seen by factor A.
ComplexMatrix reduce_on_a(const ComplexMatrix& g, const ComplexVector& b, int d) {
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) out(i, k) = b.dot(g.block(i * d, k * d, d, d) * b);
  }
  return out;
}

// sum_(i,k) conj(a_i) a_k G_(i,k): the operator seen by factor B.
ComplexMatrix reduce_on_b(const ComplexMatrix& g, const ComplexVector& a, int d) {
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) out += std::conj(a(i)) * a(k) * g.block(i * d, k * d, d, d);
  }
  return out;
}

std::pair<ComplexVector, double> ground_state(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0);
  return {es.eigenvectors().col(0), es.eigenvalues()(0)};
}

ProductMinimum seesaw(const ComplexMatrix& g, int d, ComplexVector b, int max_sweeps) {
  ProductMinimum best;
  ComplexVector a;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    a = ground_state(reduce_on_a(g, b, d)).first;
    auto [b_next, value] = ground_state(reduce_on_b(g, a, d));
    b = std::move(b_next);
    const bool stalled = best.value - value <= 1e-15 * std::max(1.0, std::abs(value));
    best.value = std::min(best.value, value);
    if (stalled) break;
  }
  best.a = std::move(a);
  best.b = std::move(b);
  return best;
}

double expectation(const ComplexMatrix& g, const ComplexVector& v) { return v.dot(g * v).real(); }

ComplexMatrix assemble(const std::vector<Atom>& atoms, int n) {
  ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
  for (const auto& at : atoms) sigma += at.weight * at.ab * at.ab.adjoint();
  return sigma;
}

std::vector<Atom> initial_atoms(const DensityMatrix& rho) {
  const int d = rho.dims().a;
  const int n = d * d;
  const Spectrum sa = herm_eig(partial_trace(rho, Subsystem::A).matrix());
  const Spectrum sb = herm_eig(partial_trace(rho, Subsystem::B).matrix());
  std::vector<Atom> atoms;
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Atom at;
      at.a = sa.eigenvectors.col(i);
      at.b = sb.eigenvectors.col(j);
      at.ab = kron(at.a, at.b);
      const double p = std::max(sa.eigenvalues(i), 0.0) * std::max(sb.eigenvalues(j), 0.0);
      at.weight = (1.0 - kInitialMixing) * p + kInitialMixing / n;
      total += at.weight;
      atoms.push_back(std::move(at));
    }
  }
  for (auto& at : atoms) at.weight /= total;
  return atoms;
}

// f(sigma) with sigma = sum_k v_k v_k^dagger / sum_k |v_k|^2 and v_k = x_k (x) y_k,
// over the real and imaginary parts of all x_k, y_k. Any parameter vector is a
// separable state, so local descent here keeps the witness valid.
class AtomObjective final : public ceres::FirstOrderFunction {
 public:
  AtomObjective(const ComplexMatrix& rho, const detail::EntropyObjective& f, int d, int atoms)
      : rho_(rho), f_(f), d_(d), atoms_(atoms) {}

  int NumParameters() const override { return atoms_ * 4 * d_; }

  bool Evaluate(const double* p, double* cost, double* gradient) const override {
    const int n = d_ * d_;
    std::vector<ComplexVector> x(atoms_), y(atoms_), v(atoms_);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    double total = 0.0;
    for (int k = 0; k < atoms_; ++k) {
      x[k] = unpack(p + k * 4 * d_);
      y[k] = unpack(p + k * 4 * d_ + 2 * d_);
      v[k] = kron(x[k], y[k]);
      m += v[k] * v[k].adjoint();
      total += v[k].squaredNorm();
    }
    if (!(total > 0.0)) return false;
    const ComplexMatrix sigma = m / total;
    const Spectrum sp = detail::eig(sigma);
    *cost = f_.value(sp);
    if (!std::isfinite(*cost)) return false;
    if (gradient == nullptr) return true;

    ComplexMatrix g = relative_entropy_gradient(rho_, sp, kGradientFloor);
    const double c = (g * sigma).trace().real();
    g -= c * ComplexMatrix::Identity(n, n);
    for (int k = 0; k < atoms_; ++k) {
      const ComplexVector gv = 2.0 * g * v[k] / total;
      // gv reshaped with the A index as rows
      const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
          gv.data(), d_, d_);
      pack(mat * y[k].conjugate(), gradient + k * 4 * d_);
      pack(mat.transpose() * x[k].conjugate(), gradient + k * 4 * d_ + 2 * d_);
    }
    return true;
  }

  ComplexVector unpack(const double* p) const {
    ComplexVector out(d_);
    for (int i = 0; i < d_; ++i) out(i) = cplx(p[2 * i], p[2 * i + 1]);
    return out;
  }

  void pack(const ComplexVector& z, double* p) const {
    for (int i = 0; i < d_; ++i) {
      p[2 * i] = z(i).real();
      p[2 * i + 1] = z(i).imag();
    }
  }

 private:
  const ComplexMatrix& rho_;
  const detail::EntropyObjective& f_;
  int d_;
  int atoms_;
};

// Local quasi-Newton descent over the atom vectors. Returns the polished atoms
// and their objective, or nothing when no improvement was found.
std::optional<std::pair<std::vector<Atom>, double>> polish(const ComplexMatrix& rho,
                                                           const detail::EntropyObjective& objective,
                                                           const std::vector<Atom>& atoms, int d, double f) {
  const int count = static_cast<int>(atoms.size());
  auto* fn = new AtomObjective(rho, objective, d, count);
  std::vector<double> params(static_cast<std::size_t>(fn->NumParameters()));
  for (int k = 0; k < count; ++k) {
    const double scale = std::pow(atoms[k].weight, 0.25);
    fn->pack(scale * atoms[k].a, params.data() + k * 4 * d);
    fn->pack(scale * atoms[k].b, params.data() + k * 4 * d + 2 * d);
  }
  ceres::GradientProblem problem(fn);
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_num_iterations = kPolishIterations;
  options.function_tolerance = 1e-15;
  options.gradient_tolerance = 1e-13;
  options.parameter_tolerance = 1e-15;
  options.logging_type = ceres::SILENT;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, params.data(), &summary);

  std::vector<Atom> out;
  double total = 0.0;
  for (int k = 0; k < count; ++k) {
    Atom at;
    at.a = fn->unpack(params.data() + k * 4 * d);
    at.b = fn->unpack(params.data() + k * 4 * d + 2 * d);
    const double na = at.a.norm();
    const double nb = at.b.norm();
    if (!(na > 0.0 && nb > 0.0)) continue;
    at.a /= na;
    at.b /= nb;
    at.ab = kron(at.a, at.b);
    at.weight = na * na * nb * nb;
    total += at.weight;
    out.push_back(std::move(at));
  }
  if (out.empty() || !(total > 0.0)) return std::nullopt;
  for (auto& at : out) at.weight /= total;
  const double f_new = objective.value(assemble(out, d * d));
  if (!(f_new < f)) return std::nullopt;
  return std::make_pair(std::move(out), f_new);
}

}  // namespace

ProductMinimum minimize_product_expectation(const ComplexMatrix& g, int d,
                                            const std::vector<ProductAtom>& warm_starts,
                                            int random_starts, std::uint64_t rng_seed, int max_sweeps) {
  ProductMinimum best;
  for (const auto& w : warm_starts) {
    ProductMinimum m = seesaw(g, d, w.b, max_sweeps);
    if (m.value < best.value) best = std::move(m);
  }
  Rng rng = make_rng(rng_seed);
  for (int s = 0; s < random_starts; ++s) {
    ProductMinimum m = seesaw(g, d, haar_vector(d, rng), max_sweeps);
    if (m.value < best.value) best = std::move(m);
  }
  return best;
}

ERelResult e_r_upper(const DensityMatrix& rho, const ErelConfig& config) {
  if (!rho.is_composite()) throw std::invalid_argument("e_r_upper: state is not composite");
  const int d = rho.local_dim();
  if (d > 4) throw std::invalid_argument("e_r_upper: local dimension above 4 is not supported");
  const int n = d * d;
  const detail::EntropyObjective objective(rho.matrix());

  std::vector<Atom> atoms = initial_atoms(rho);
  ComplexMatrix sigma = assemble(atoms, n);
  double f = objective.value(sigma);

  ERelResult result;
  result.objective_history.push_back(f);
  ProductAtom last_oracle;
  bool have_last = false;
  int stalls = 0;

  int it = 0;
  for (; it < config.max_iterations; ++it) {
    const Spectrum sp = detail::eig(sigma);
    const ComplexMatrix g = relative_entropy_gradient(rho.matrix(), sp, kGradientFloor);

    // warm starts: previous oracle answer and the heaviest atoms
    std::vector<ProductAtom> warm;
    if (have_last) warm.push_back(last_oracle);
    std::vector<std::size_t> order(atoms.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const std::size_t nwarm = std::min(kWarmAtoms, atoms.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(nwarm), order.end(),
                      [&](std::size_t x, std::size_t y) { return atoms[x].weight > atoms[y].weight; });
    for (std::size_t k = 0; k < nwarm; ++k) warm.push_back({atoms[order[k]].a, atoms[order[k]].b, 0.0});

    const ProductMinimum s = minimize_product_expectation(g, d, warm, config.multistarts,
                                                          derive_seed(config.seed, static_cast<std::uint64_t>(it)),
                                                          config.seesaw_sweeps);
    last_oracle = {s.a, s.b, 0.0};
    have_last = true;

    double sigma_dot = 0.0;
    std::size_t away = 0;
    double away_value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double e = expectation(g, atoms[k].ab);
      sigma_dot += atoms[k].weight * e;
      if (e > away_value) {
        away_value = e;
        away = k;
      }
    }
    result.fw_gap = sigma_dot - s.value;
    // f >= 0 everywhere, so f itself bounds the suboptimality
    if (result.fw_gap <= config.gap_tolerance || f <= config.gap_tolerance) {
      result.converged = true;
      break;
    }

    // pairwise step: move weight from the away atom to the oracle atom
    const ComplexVector s_ab = kron(s.a, s.b);
    const ComplexMatrix direction = s_ab * s_ab.adjoint() - atoms[away].ab * atoms[away].ab.adjoint();
    const double gamma_max = atoms[away].weight;
    auto phi = [&](double gamma) {
      const double v = objective.value(ComplexMatrix(sigma + gamma * direction));
      return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };
    std::uintmax_t max_evals = 200;
    auto [gamma, f_new] = boost::math::tools::brent_find_minima(
        phi, 0.0, gamma_max, std::numeric_limits<double>::digits / 2, max_evals);
    const double f_drop = phi(gamma_max);
    if (f_drop <= f_new) {
      gamma = gamma_max;
      f_new = f_drop;
    }
    if (!(f_new < f) || gamma <= 0.0) {
      if (auto polished = polish(rho.matrix(), objective, atoms, d, f)) {
        atoms = std::move(polished->first);
        f = polished->second;
        sigma = assemble(atoms, n);
        result.objective_history.push_back(f);
        continue;
      }
      if (++stalls >= kMaxStalls) break;
      continue;
    }
    stalls = 0;

    atoms[away].weight -= gamma;
    if (gamma == gamma_max) atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(away));
    atoms.push_back({s.a, s.b, s_ab, gamma});
    if ((it + 1) % kResyncEvery == 0) {
      sigma = assemble(atoms, n);
      f_new = objective.value(sigma);
    } else {
      sigma += gamma * direction;
    }
    f = f_new;
    result.objective_history.push_back(f);

    if ((it + 1) % kPolishEvery == 0) {
      if (auto polished = polish(rho.matrix(), objective, atoms, d, f)) {
        atoms = std::move(polished->first);
        f = polished->second;
        sigma = assemble(atoms, n);
        result.objective_history.push_back(f);
      }
    }
  }
  result.iterations = it;

  double total = 0.0;
  for (const auto& at : atoms) total += at.weight;
  for (auto& at : atoms) {
    at.weight /= total;
    result.decomposition.push_back({at.a, at.b, at.weight});
  }
  sigma = assemble(atoms, n);
  result.witness = DensityMatrix((sigma + sigma.adjoint()) / 2.0, rho.dims());
  result.upper = relative_entropy(rho, result.witness);
  return result;
}

}  // namespace dcopt
