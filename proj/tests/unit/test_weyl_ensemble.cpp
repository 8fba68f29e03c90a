#include <doctest.h>

#include <cmath>

#include "dcopt/random.hpp"
#include "dcopt/su_basis.hpp"
#include "dcopt/weyl_ensemble.hpp"
#include "support.hpp"

using namespace dcopt;
using namespace testing;

namespace {

bool same_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  const cplx overlap = (a.adjoint() * b).trace();
  if (std::abs(overlap) < tol) return false;
  const cplx phase = overlap / std::abs(overlap);
  return max_abs_diff(a * phase, b) <= tol;
}

}  // namespace

TEST_CASE("WeylIndex flat labels") {
  CHECK(WeylIndex{0, 0}.flat(3) == 0);
  CHECK(WeylIndex{2, 1}.flat(3) == 7);
  const WeylIndex w = WeylIndex::from_flat(7, 3);
  CHECK(w.p == 2);
  CHECK(w.q == 1);
  for (int f = 0; f < 16; ++f) CHECK(WeylIndex::from_flat(f, 4).flat(4) == f);
}

TEST_CASE("weyl examples") {
  for (int d = 2; d <= 5; ++d) CHECK(max_abs_diff(weyl(d, 0, 0), identity(d)) == 0.0);
  CHECK(max_abs_diff(weyl(2, 1, 0), pauli_z()) <= 1e-15);
  CHECK(max_abs_diff(weyl(2, 0, 1), pauli_x()) == 0.0);
  CHECK_THROWS_AS(weyl(3, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(weyl(3, 0, -1), std::out_of_range);
}

TEST_CASE("weyl action on kets") {
  const int d = 5;
  const double pi = std::acos(-1.0);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const ComplexMatrix u = weyl(d, p, q);
      for (int j = 0; j < d; ++j) {
        const cplx expected = std::polar(1.0, 2.0 * pi * p * j / d);
        CHECK(std::abs(u((j + q) % d, j) - expected) <= 1e-14);
      }
    }
  }
}

TEST_CASE("all_weyl(2) is the Bennett-Wiesner set") {
  const std::vector<ComplexMatrix> u = all_weyl(2);
  REQUIRE(u.size() == 4);
  // flat index p d + q: I, X, Z, ZX
  CHECK(max_abs_diff(u[0], identity(2)) == 0.0);
  CHECK(max_abs_diff(u[1], pauli_x()) == 0.0);
  CHECK(max_abs_diff(u[2], pauli_z()) <= 1e-15);
  CHECK(same_up_to_phase(u[3], pauli_x() * pauli_z(), 1e-14));
  // as a set, up to phases: {I, sigma_z, sigma_x, sigma_x sigma_z}
  for (const ComplexMatrix& target : {identity(2), pauli_z(), pauli_x(), ComplexMatrix(pauli_x() * pauli_z())}) {
    int hits = 0;
    for (const auto& m : u) hits += same_up_to_phase(m, target, 1e-14) ? 1 : 0;
    CHECK(hits == 1);
  }
}

TEST_CASE("property: Weyl orthogonality for d = 2..6") {
  for (int d = 2; d <= 6; ++d) {
    const auto u = all_weyl(d);
    REQUIRE(static_cast<int>(u.size()) == d * d);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(is_unitary(u[i], 1e-12));
      for (std::size_t j = 0; j < u.size(); ++j) {
        const cplx g = (u[i].adjoint() * u[j]).trace() / static_cast<double>(d);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
    CHECK(worst <= 1e-12);
  }
  CHECK_THROWS_AS(all_weyl(1), std::invalid_argument);
}

TEST_CASE("twirl examples") {
  for (int d : {2, 3, 4}) {
    CHECK(max_abs_diff(twirl(basis_projector(d, 1, 1), d), d * identity(d)) <= 1e-12);
    CHECK(max_abs(twirl(basis_projector(d, 1, 2), d)) <= 1e-12);
    for (const auto& l : generators(d).lambdas) CHECK(max_abs(twirl(l, d)) <= 1e-12);
  }
  CHECK_THROWS_AS(twirl(identity(3), 2), std::invalid_argument);
}

TEST_CASE("property: twirl of 50 random matrices is d Tr(m) I") {
  Rng rng = make_rng(17);
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 5;
    const ComplexMatrix m = ginibre(d, d, rng);
    CHECK(max_abs_diff(twirl(m, d), static_cast<double>(d) * m.trace() * identity(d)) <= 1e-10);
  }
}

TEST_CASE("apply_signal examples") {
  const DensityMatrix rho = random_state(3, 5);
  CHECK(max_abs_diff(apply_signal(rho, identity(3)).matrix(), rho.matrix()) <= 1e-15);

  // singlet under sigma_x on A becomes |Phi-><Phi-|
  const DensityMatrix singlet = DensityMatrix::bipartite(singlet_by_hand());
  const ComplexMatrix phi_minus = DensityMatrix::pure(bell_vector(BellLabel::phi_minus), Dims{2, 2}).matrix();
  CHECK(max_abs_diff(apply_signal(singlet, pauli_x()).matrix(), phi_minus) <= 1e-15);

  CHECK_THROWS_AS(apply_signal(rho, identity(2)), std::invalid_argument);
  ComplexMatrix not_unitary = identity(3);
  not_unitary(0, 0) = 1.1;
  CHECK_THROWS_AS(apply_signal(rho, not_unitary), std::invalid_argument);
}

TEST_CASE("property: apply_signal preserves trace, hermiticity and spectrum") {
  Rng rng = make_rng(23);
  for (int k = 0; k < 30; ++k) {
    const int d = 2 + k % 3;
    const DensityMatrix rho = random_state(d, 300 + k);
    const DensityMatrix out = apply_signal(rho, haar_unitary(d, rng));
    CHECK(std::abs(out.matrix().trace().real() - 1.0) <= 1e-12);
    CHECK(hermiticity_error(out.matrix()) <= 1e-12);
    CHECK((herm_eig(out.matrix()).eigenvalues - herm_eig(rho.matrix()).eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("canonical ensemble structure") {
  for (int d : {2, 3}) {
    const SignalEnsemble e = canonical_ensemble(random_state(d, 9));
    REQUIRE(static_cast<int>(e.size()) == d * d);
    const auto u = all_weyl(d);
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK(e.probability(i) == doctest::Approx(1.0 / (d * d)));
      CHECK(max_abs_diff(e.signal(i).unitary, u[i]) == 0.0);
    }
  }
  const DensityMatrix mixed = DensityMatrix::bipartite(identity(4) / 4.0);
  const SignalEnsemble e = canonical_ensemble(mixed);
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(max_abs_diff(e.state(i).matrix(), mixed.matrix()) <= 1e-15);
}

TEST_CASE("ensemble average equals (1/d) I (x) rho^B") {
  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = random_state(d, 60 + d);
    const ComplexMatrix closed =
        kron(identity(d) / static_cast<double>(d), partial_trace(rho, Subsystem::B).matrix());
    CHECK(max_abs_diff(canonical_ensemble(rho).average().matrix(), closed) <= 1e-12);
  }
}

TEST_CASE("SignalEnsemble validates probabilities") {
  const DensityMatrix rho = random_state(2, 1);
  CHECK_THROWS_AS(SignalEnsemble(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(SignalEnsemble(rho, {{identity(2), 0.5}, {pauli_x(), 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(SignalEnsemble(rho, {{identity(2), 1.5}, {pauli_x(), -0.5}}), std::invalid_argument);
  CHECK_NOTHROW(SignalEnsemble(rho, {{identity(2), 0.5}, {pauli_x(), 0.5 + 5e-13}}));
}
