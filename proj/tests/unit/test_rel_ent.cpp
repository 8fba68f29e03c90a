#include <doctest.h>

#include <cmath>

#include "dcopt/capacity.hpp"
#include "dcopt/rel_ent.hpp"
#include "support.hpp"

using namespace dcopt;
using namespace testing;

namespace {

DensityMatrix singlet() { return DensityMatrix::bipartite(singlet_by_hand()); }

DensityMatrix product_state(int d, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const DensityMatrix a = random_single(d, rng);
  const DensityMatrix b = random_single(d, rng);
  return DensityMatrix(kron(a.matrix(), b.matrix()), Dims{d, d});
}

DensityMatrix separable_state(int d, std::uint64_t seed) {
  StateSpec s;
  s.kind = StateKind::random_separable;
  s.d = d;
  s.seed = seed;
  return build(s);
}

// E_R of lambda |Psi-><Psi-| + (1 - lambda) |Psi+><Psi+|, lambda >= 1/2, from
// chi* = log2 2 + S(rho^B) - S(rho) = 2 - h(lambda) and the equality chi* = E_R + 1.
double two_bell_e_r(double lambda) { return 1.0 - binary_entropy(lambda); }

}  // namespace

TEST_CASE("product states have zero relative entropy of entanglement") {
  for (int d : {2, 3}) {
    const ERelResult r = relative_entropy_of_entanglement(product_state(d, 5 + d));
    CHECK(r.upper <= 1e-7);
    REQUIRE(r.lower.has_value());
    CHECK(*r.lower <= r.upper + 1e-12);
    CHECK(*r.lower >= -1e-12);
  }
}

TEST_CASE("the singlet has E_R = 1 from both sides") {
  const ERelResult r = relative_entropy_of_entanglement(singlet());
  CHECK(std::abs(r.upper - 1.0) <= 1e-6);
  REQUIRE(r.lower.has_value());
  CHECK(std::abs(*r.lower - 1.0) <= 1e-3);
  CHECK(*r.lower <= 1.0 + 1e-9);
  CHECK(r.converged);
}

TEST_CASE("maximally mixed state: both bounds vanish") {
  const PptBound low = e_r_lower(werner_state(0.25));
  CHECK(std::abs(low.lower) <= 1e-9);
  CHECK(e_r_upper(werner_state(0.25)).upper <= 1e-9);
}

TEST_CASE("two-Bell mixtures match the closed form") {
  for (double lambda : {0.5, 0.6, 0.75, 0.9, 1.0}) {
    const DensityMatrix rho = bell_diagonal_state(lambda, 1.0 - lambda, 0.0, 0.0);
    const ERelResult r = relative_entropy_of_entanglement(rho);
    const double exact = two_bell_e_r(lambda);
    CHECK(r.upper >= exact - 1e-9);
    CHECK(r.upper - exact <= 1e-6);
    REQUIRE(r.lower.has_value());
    CHECK(*r.lower <= exact + 1e-6);
    CHECK(exact - *r.lower <= 1e-3);
    CHECK(std::abs(chi_star(rho) - 1.0 - exact) <= 1e-12);
  }
}

TEST_CASE("bell_diag_equality_check") {
  const BellDiagonalCheck one = bell_diag_equality_check(1.0);
  CHECK(std::abs(one.chi_star - 2.0) <= 1e-12);
  CHECK(one.residual <= 1e-3);
  const BellDiagonalCheck half = bell_diag_equality_check(0.5);
  CHECK(std::abs(half.chi_star - 1.0) <= 1e-12);
  CHECK(half.e_r_upper <= 1e-6);
  CHECK(half.residual <= 1e-3);
  CHECK(bell_diag_equality_check(0.75).residual <= 1e-3);
  CHECK_THROWS_AS(bell_diag_equality_check(0.4), std::invalid_argument);
  CHECK_THROWS_AS(bell_diag_equality_check(1.1), std::invalid_argument);
  CHECK_THROWS_AS(bell_diag_equality_check(std::nan("")), std::invalid_argument);
}

TEST_CASE("property: witness, decomposition and history are consistent") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int d = 2 + static_cast<int>(seed % 2);
    const DensityMatrix rho = random_state(d, 900 + seed);
    const ERelResult r = e_r_upper(rho);

    CHECK(std::abs(relative_entropy(rho, r.witness) - r.upper) <= 1e-9);

    double total = 0.0;
    ComplexMatrix rebuilt = ComplexMatrix::Zero(d * d, d * d);
    for (const ProductAtom& at : r.decomposition) {
      CHECK(at.weight >= 0.0);
      CHECK(std::abs(at.a.norm() - 1.0) <= 1e-10);
      CHECK(std::abs(at.b.norm() - 1.0) <= 1e-10);
      total += at.weight;
      const ComplexVector ab = kron(at.a, at.b);
      rebuilt += at.weight * ab * ab.adjoint();
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
    CHECK(max_abs_diff(rebuilt, r.witness.matrix()) <= 1e-10);

    REQUIRE_FALSE(r.objective_history.empty());
    for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
      CHECK(r.objective_history[i] <= r.objective_history[i - 1]);
    }
    CHECK(r.objective_history.back() == doctest::Approx(r.upper).epsilon(1e-12));
  }
}

TEST_CASE("property: brackets are sound and tight at d = 2") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_state(2, 100 + seed);
    const ERelResult r = relative_entropy_of_entanglement(rho);
    REQUIRE(r.lower.has_value());
    CHECK(*r.lower <= r.upper + 1e-6);
    CHECK(r.upper - *r.lower <= 1e-3);
    CHECK(r.converged);
  }
}

TEST_CASE("property: d = 3 brackets are ordered") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const ERelResult r = relative_entropy_of_entanglement(random_state(3, 300 + seed));
    REQUIRE(r.lower.has_value());
    CHECK(*r.lower <= r.upper + 1e-6);
    CHECK(*r.lower >= 0.0);
  }
}

TEST_CASE("property: separable states have E_R = 0") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (int d : {2, 3}) {
      const DensityMatrix rho = separable_state(d, seed);
      CHECK(e_r_upper(rho).upper <= 1e-4);
      CHECK(e_r_lower(rho).lower <= 1e-4);
    }
  }
}

TEST_CASE("property: the upper bound is invariant under local unitaries") {
  Rng rng = make_rng(81);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const int d = 2 + static_cast<int>(seed % 2);
    const DensityMatrix rho = random_state(d, 1300 + seed);
    const ComplexMatrix uv = kron(haar_unitary(d, rng), haar_unitary(d, rng));
    const DensityMatrix moved(uv * rho.matrix() * uv.adjoint(), rho.dims());
    const double a = e_r_upper(rho).upper;
    const double b = e_r_upper(moved).upper;
    CHECK(b <= a + 1e-3);
    CHECK(a <= b + 1e-3);
  }
}

TEST_CASE("d = 4 gets an upper bound only") {
  const ERelResult r = relative_entropy_of_entanglement(separable_state(4, 1));
  CHECK_FALSE(r.lower.has_value());
  CHECK(r.upper <= 1e-4);
}

TEST_CASE("argument errors") {
  const DensityMatrix single = DensityMatrix::single(identity(4) / 4.0);
  CHECK_THROWS_AS(e_r_upper(single), std::invalid_argument);
  CHECK_THROWS_AS(e_r_lower(single), std::invalid_argument);
  const DensityMatrix big(identity(25) / 25.0, Dims{5, 5});
  CHECK_THROWS_AS(e_r_upper(big), std::invalid_argument);
  const DensityMatrix four(identity(16) / 16.0, Dims{4, 4});
  CHECK_THROWS_AS(e_r_lower(four), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem2(four), std::invalid_argument);
  CHECK_THROWS_AS(pvp_check(four), std::invalid_argument);
  CHECK_THROWS_AS(e_r_lower(singlet(), {}, DensityMatrix(identity(9) / 9.0, Dims{3, 3})), std::invalid_argument);
}

TEST_CASE("capacity bracket on the singlet and on I/4") {
  const BoundsReport s = verify_theorem2(singlet());
  CHECK(s.chi_star == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.lower_bound_ok);
  CHECK(s.upper_bound_ok);
  CHECK(s.pvp_ok);
  CHECK(s.verdict == Verdict::holds);
  // both inequalities are tight here
  CHECK(std::abs(s.chi_star - s.e_r.upper - 1.0) <= 1e-6);

  const BoundsReport m = verify_theorem2(werner_state(0.25));
  CHECK(std::abs(m.chi_star) <= 1e-12);
  CHECK(m.e_r.upper <= 1e-9);
  CHECK(m.verdict == Verdict::holds);
}

TEST_CASE("bracket flags are recomputed from the stored numbers") {
  const BoundsReport r = verify_theorem2(random_state(2, 55));
  CHECK(r.lower_bound_ok == (r.e_r.upper <= r.chi_star + r.tolerance));
  CHECK(r.upper_bound_ok == (r.chi_star <= *r.e_r.lower + r.log2_d + r.tolerance));
  CHECK(r.log2_d == 1.0);
}

TEST_CASE("PVP inequality") {
  const PvpCheck s = pvp_check(singlet());
  CHECK(std::abs(s.lhs - 1.0) <= 1e-12);
  CHECK(s.ok);
  CHECK(s.verdict == Verdict::holds);

  const PvpCheck p = pvp_check(product_state(2, 3));
  CHECK(p.lhs <= 0.0);
  CHECK(p.ok);
  CHECK(p.verdict == Verdict::holds);

  // a fabricated result with a tiny upper bound must be reported as violated
  ERelResult fake;
  fake.upper = 0.5;
  CHECK(pvp_check(singlet(), fake).verdict == Verdict::violated);
  fake.upper = 1.0;
  fake.lower = 0.5;
  CHECK(pvp_check(singlet(), fake).verdict == Verdict::inconclusive);
}

TEST_CASE("product oracle finds known minima") {
  // <ab| -|Psi-><Psi-| |ab> >= -1/2, attained at |01>
  const ProductMinimum m = minimize_product_expectation(-singlet_by_hand(), 2, {}, 8, 3);
  CHECK(m.value == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(std::abs(m.a.norm() - 1.0) <= 1e-12);

  // for A (x) B with A, B > 0 the minimum is lambda_min(A) lambda_min(B)
  Rng rng = make_rng(11);
  const DensityMatrix a = random_single(3, rng);
  const DensityMatrix b = random_single(3, rng);
  const ProductMinimum k = minimize_product_expectation(kron(a.matrix(), b.matrix()), 3, {}, 8, 4);
  const double expect = herm_eig(a.matrix()).eigenvalues(0) * herm_eig(b.matrix()).eigenvalues(0);
  CHECK(k.value == doctest::Approx(expect).epsilon(1e-9));
  const ComplexVector ab = kron(k.a, k.b);
  CHECK(std::abs((ab.adjoint() * kron(a.matrix(), b.matrix()) * ab)(0, 0).real() - k.value) <= 1e-12);
}

TEST_CASE("project_to_ppt") {
  // a PPT state is its own projection
  const DensityMatrix sep = separable_state(2, 9);
  CHECK(max_abs_diff(project_to_ppt(sep.matrix(), sep.dims()), sep.matrix()) <= 1e-10);

  const ComplexMatrix p = project_to_ppt(singlet_by_hand(), Dims{2, 2});
  CHECK(std::abs(p.trace().real() - 1.0) <= 1e-10);
  CHECK(herm_eig(p).eigenvalues(0) >= -1e-10);
  CHECK(herm_eig(partial_transpose(p, Dims{2, 2})).eigenvalues(0) >= -1e-10);
  // the nearest PPT state to the singlet is the Werner state at F = 1/2
  CHECK(max_abs_diff(p, werner_state(0.5).matrix()) <= 1e-8);
}

TEST_CASE("the lower bound accepts a warm start") {
  const DensityMatrix rho = random_state(2, 71);
  const ERelResult up = e_r_upper(rho);
  const PptBound cold = e_r_lower(rho);
  const PptBound warm = e_r_lower(rho, {}, up.witness);
  CHECK(std::abs(cold.lower - warm.lower) <= 1e-6);
  CHECK(warm.lower <= up.upper + 1e-9);
  CHECK(warm.primal >= warm.lower - 1e-12);
}

TEST_CASE("results are reproducible") {
  const DensityMatrix rho = random_state(3, 17);
  const ERelResult a = relative_entropy_of_entanglement(rho);
  const ERelResult b = relative_entropy_of_entanglement(rho);
  CHECK(a.upper == b.upper);
  CHECK(a.lower == b.lower);
  CHECK(a.witness.matrix() == b.witness.matrix());
}
