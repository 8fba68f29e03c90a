#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dcopt/capacity.hpp"
#include "dcopt/rel_ent.hpp"
#include "dcopt/report.hpp"
#include "dcopt/state_io.hpp"
#include "support.hpp"

using namespace dcopt;
using namespace testing;
using nlohmann::json;

namespace {

const std::filesystem::path kData = DCOPT_TEST_DATA;

}  // namespace

TEST_CASE("state files round-trip exactly") {
  const DensityMatrix rho = random_state(3, 21);
  const auto path = std::filesystem::temp_directory_path() / "dcopt_roundtrip.json";
  save_state(rho, path);
  const DensityMatrix back = load_state(path);
  std::filesystem::remove(path);
  CHECK(back.dims() == rho.dims());
  CHECK(back.matrix() == rho.matrix());
}

TEST_CASE("fixture file loads as I/4") {
  const DensityMatrix rho = load_state(kData / "maximally_mixed.json");
  CHECK(max_abs_diff(rho.matrix(), identity(4) / 4.0) == 0.0);
}

TEST_CASE("real-number entries are accepted") {
  const json j = {{"d", 2}, {"matrix", {{0.5, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0.5}}}};
  CHECK(state_from_json(j).matrix()(3, 3) == cplx(0.5, 0.0));
}

TEST_CASE("malformed state files are format errors") {
  CHECK_THROWS_AS(load_state(kData / "does_not_exist.json"), StateFileError);
  CHECK_THROWS_AS(load_state(kData / "wrong_shape.json"), StateFileError);
  CHECK_THROWS_AS(state_from_json(json::array()), StateFileError);
  CHECK_THROWS_AS(state_from_json({{"matrix", json::array()}}), StateFileError);
  CHECK_THROWS_AS(state_from_json({{"d", 2.5}, {"matrix", json::array()}}), StateFileError);
  CHECK_THROWS_AS(state_from_json({{"d", 9}, {"matrix", json::array()}}), StateFileError);
  CHECK_THROWS_AS(state_from_json({{"d", 1}, {"matrix", {{"x"}}}}), StateFileError);
  CHECK_THROWS_AS(state_from_json({{"d", 1}, {"matrix", {{{1, 0, 0}}}}}), StateFileError);

  const auto path = std::filesystem::temp_directory_path() / "dcopt_garbage.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_state(path), StateFileError);
  std::filesystem::remove(path);
}

TEST_CASE("well-formed but unphysical matrices violate invariants") {
  CHECK_THROWS_AS(load_state(kData / "not_positive.json"), InvariantViolation);
  const json not_hermitian = {{"d", 1}, {"matrix", {{{1.0, 0.1}}}}};
  CHECK_THROWS_AS(state_from_json(not_hermitian), InvariantViolation);
  const json bad_trace = {{"d", 1}, {"matrix", {{2.0}}}};
  CHECK_THROWS_AS(state_from_json(bad_trace), InvariantViolation);
  Tolerances loose;
  loose.trace = 2.0;
  CHECK_NOTHROW(state_from_json(bad_trace, loose));
}

TEST_CASE("a state accepted under loose tolerances is repaired to the nearest state") {
  const json off = {{"d", 2},
                    {"matrix", {{0.4 + 1e-9, 0, 0, 0}, {0, 0.3, 0, 0}, {0, 0, 0.3, 0}, {0, 0, 0, -1e-9}}}};
  CHECK_THROWS_AS(state_from_json(off), InvariantViolation);
  Tolerances loose;
  loose.negativity = 1e-6;
  const DensityMatrix rho = state_from_json(off, loose);
  CHECK(herm_eig(rho.matrix()).eigenvalues(0) >= 0.0);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-15);
  CHECK(std::abs(rho.matrix()(0, 0).real() - 0.4) <= 1e-8);
  // the marginals of the repaired state are valid states at default tolerances
  CHECK_NOTHROW(partial_trace(rho, Subsystem::B));

  Tolerances strict;
  strict.trace = 1e-20;
  const json slightly = {{"d", 1}, {"matrix", {{1.0 + 1e-14}}}};
  CHECK_NOTHROW(state_from_json(slightly));
  CHECK_THROWS_AS(state_from_json(slightly, strict), InvariantViolation);
}

TEST_CASE("state specs round-trip through JSON") {
  StateSpec s;
  s.kind = StateKind::random_mixed;
  s.d = 3;
  s.params = {4};
  s.seed = 99;
  const StateSpec back = state_spec_from_json(state_spec_to_json(s));
  CHECK(back.kind == s.kind);
  CHECK(back.d == s.d);
  CHECK(back.params == s.params);
  CHECK(back.seed == s.seed);
  CHECK_FALSE(state_spec_to_json(s).contains("bell"));

  StateSpec b;
  b.bell = BellLabel::phi_plus;
  const json jb = state_spec_to_json(b);
  CHECK(jb["bell"] == "phi_plus");
  CHECK(state_spec_from_json(jb).bell == BellLabel::phi_plus);

  CHECK_THROWS_AS(state_spec_from_json({{"d", 2}}), StateFileError);
  CHECK_THROWS_AS(state_spec_from_json({{"kind", "ghz"}}), StateFileError);
  CHECK_THROWS_AS(state_spec_from_json({{"kind", "bell"}, {"bell", "nope"}}), StateFileError);
  CHECK_THROWS_AS(state_spec_from_json({{"kind", "werner"}, {"params", "x"}}), StateFileError);
}

TEST_CASE("non-finite numbers are written as strings") {
  CHECK(number(kInfinity) == "inf");
  CHECK(number(-kInfinity) == "-inf");
  CHECK(number(std::nan("")) == "nan");
  CHECK(number(0.5) == 0.5);
}

TEST_CASE("reports carry units and the stored numbers") {
  const DensityMatrix rho = DensityMatrix::bipartite(singlet_by_hand());
  const json cap = to_json(capacity_report(rho));
  CHECK(cap["units"] == "bits");
  CHECK(cap["chi_star"].get<double>() == doctest::Approx(2.0));
  CHECK_FALSE(cap.contains("audit"));

  AuditConfig audit;
  audit.trials = 10;
  const json with_audit = to_json(capacity_report(rho, audit));
  CHECK(with_audit["audit"]["trials"] == 10);
  CHECK(with_audit["audit"]["passed"] == true);

  CHECK(to_json(chi_star_breakdown(rho))["units"] == "bits");

  const BoundsReport b = verify_theorem2(rho);
  const json jb = to_json(b);
  CHECK(jb["units"] == "bits");
  CHECK(jb["verdict"] == "holds");
  CHECK(jb["e_r"]["bracket"] == "exact");
  CHECK_FALSE(jb["e_r"].contains("witness"));
  CHECK(jb["e_r"]["upper"].get<double>() == b.e_r.upper);

  const json je = to_json(b.e_r);
  REQUIRE(je.contains("witness"));
  CHECK(je["witness"].size() == 4);
  CHECK(je["decomposition"].size() == b.e_r.decomposition.size());

  ERelResult empty;
  const json jempty = to_json(empty, false);
  CHECK(jempty["upper"] == "inf");
  CHECK(jempty["lower"].is_null());
  CHECK(jempty["gap"].is_null());

  CHECK(to_json(bell_diag_equality_check(0.75))["units"] == "bits");
  CHECK(to_json(pvp_check(rho))["verdict"] == "holds");
}

TEST_CASE("bracket labels by dimension") {
  CHECK(bracket_label(2) == "exact");
  CHECK(bracket_label(3) == "ppt_relaxation");
  CHECK(bracket_label(4) == "upper_only");
}
