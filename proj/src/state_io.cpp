#include "dcopt/state_io.hpp"

#include <fstream>

#include "dcopt/matrix_functions.hpp"

namespace dcopt {

namespace {

cplx read_entry(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw StateFileError("matrix entries must be [re, im] pairs");
}

}  // namespace

DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol) {
  if (!j.is_object()) throw StateFileError("state file: expected a JSON object");
  if (!j.contains("d") || !j["d"].is_number_integer()) throw StateFileError("state file: missing integer \"d\"");
  const int d = j["d"].get<int>();
  if (d < 1 || d > 8) throw StateFileError("state file: d must lie in 1..8");
  if (!j.contains("matrix") || !j["matrix"].is_array()) throw StateFileError("state file: missing \"matrix\"");
  const auto& rows = j["matrix"];
  const int n = d * d;
  if (static_cast<int>(rows.size()) != n) {
    throw StateFileError("state file: matrix must have d^2 = " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) {
      throw StateFileError("state file: row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) m(r, c) = read_entry(rows[r][c]);
  }
  if (!m.allFinite()) throw StateFileError("state file: non-finite entry");
  DensityMatrix rho(m, Dims{d, d}, tol);
  try {
    return DensityMatrix(rho.matrix(), Dims{d, d});
  } catch (const InvariantViolation&) {
    // accepted only under loosened tolerances: continue with the nearest
    // state, so reduced and transformed states stay valid
    return DensityMatrix(project_to_density(rho.matrix()), Dims{d, d});
  }
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"d", rho.dims().a}, {"matrix", std::move(rows)}};
}

DensityMatrix load_state(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw StateFileError("cannot open state file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StateFileError("state file " + path.string() + ": " + e.what());
  }
  return state_from_json(j, tol);
}

void save_state(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << state_to_json(rho).dump(1) << '\n';
}

StateSpec state_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw StateFileError("state spec: missing string \"kind\"");
  }
  StateSpec spec;
  const auto kind = parse_state_kind(j["kind"].get<std::string>());
  if (!kind) throw StateFileError("state spec: unknown kind \"" + j["kind"].get<std::string>() + "\"");
  spec.kind = *kind;
  try {
    if (j.contains("d")) spec.d = j["d"].get<int>();
    if (j.contains("params")) spec.params = j["params"].get<std::vector<double>>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("bell")) {
      const auto label = parse_bell_label(j["bell"].get<std::string>());
      if (!label) throw StateFileError("state spec: unknown bell label");
      spec.bell = *label;
    }
  } catch (const nlohmann::json::exception& e) {
    throw StateFileError(std::string("state spec: ") + e.what());
  }
  return spec;
}

nlohmann::json state_spec_to_json(const StateSpec& spec) {
  nlohmann::json j{{"kind", to_string(spec.kind)}, {"d", spec.d}, {"params", spec.params}, {"seed", spec.seed}};
  if (spec.kind == StateKind::bell) j["bell"] = to_string(spec.bell);
  return j;
}

}  // namespace dcopt
