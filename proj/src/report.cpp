#include "dcopt/report.hpp"

#include <cmath>

namespace dcopt {

nlohmann::json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

nlohmann::json vector_to_json(const ComplexVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

nlohmann::json optional_number(const std::optional<double>& x) {
  return x ? number(*x) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const AuditOutcome& a) {
  return {{"trials", a.trials},
          {"seed", a.seed},
          {"tolerance", number(a.tolerance)},
          {"chi_star", number(a.chi_star)},
          {"max_chi_found", number(a.max_chi_found)},
          {"margin", number(a.margin)},
          {"violations", a.violations},
          {"max_decomposition_residual", number(a.max_decomposition_residual)},
          {"decomposition_failures", a.decomposition_failures},
          {"offending_trials", a.offending_trials},
          {"passed", a.passed()}};
}

nlohmann::json to_json(const CapacityReport& r) {
  nlohmann::json j{{"units", "bits"},
                   {"chi_star", number(r.chi_star)},
                   {"chi", number(r.chi)},
                   {"s_rho", number(r.s_rho)},
                   {"s_avg", number(r.s_avg)},
                   {"s_rho_b", number(r.s_rho_b)},
                   {"lemma1_residual", number(r.lemma1_residual)},
                   {"lemma2_max_residual", number(r.lemma2_max_residual)},
                   {"donald_residual", number(r.donald_residual)}};
  if (r.audit) j["audit"] = to_json(*r.audit);
  return j;
}

nlohmann::json to_json(const ChiStarBreakdown& b) {
  return {{"units", "bits"},
          {"chi_star", number(b.chi_star)},
          {"s_rho", number(b.s_rho)},
          {"s_avg", number(b.s_avg)},
          {"s_rho_b", number(b.s_rho_b)},
          {"entropy_identity_residual", number(b.entropy_identity_residual)}};
}

nlohmann::json to_json(const Lemma2Check& c) {
  return {{"max_residual", number(c.max_residual)},
          {"infinite", c.infinite},
          {"reduced_support", c.reduced_support}};
}

nlohmann::json to_json(const DonaldCheck& c) {
  return {{"residual", number(c.residual)},
          {"support_violation", c.support_violation},
          {"average_divergence", number(c.average_divergence)},
          {"chi", number(c.chi)},
          {"mean_divergence", number(c.mean_divergence)}};
}

nlohmann::json to_json(const HSDecomposition& hs) {
  nlohmann::json t = nlohmann::json::array();
  for (Eigen::Index i = 0; i < hs.t.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < hs.t.cols(); ++k) row.push_back(hs.t(i, k));
    t.push_back(std::move(row));
  }
  return {{"d", hs.d},
          {"r", std::vector<double>(hs.r.data(), hs.r.data() + hs.r.size())},
          {"s", std::vector<double>(hs.s.data(), hs.s.data() + hs.s.size())},
          {"t", std::move(t)}};
}

std::string bracket_label(int d) {
  if (d == 2) return "exact";
  if (d == 3) return "ppt_relaxation";
  return "upper_only";
}

nlohmann::json to_json(const ERelResult& e, bool include_witness) {
  const int d = e.witness.dims().a;
  nlohmann::json j{{"units", "bits"},
                   {"upper", number(e.upper)},
                   {"lower", optional_number(e.lower)},
                   {"gap", optional_number(e.gap())},
                   {"bracket", bracket_label(d)},
                   {"iterations", e.iterations},
                   {"converged", e.converged},
                   {"fw_gap", number(e.fw_gap)}};
  if (include_witness) {
    j["witness"] = matrix_to_json(e.witness.matrix());
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& at : e.decomposition) {
      atoms.push_back({{"weight", at.weight}, {"a", vector_to_json(at.a)}, {"b", vector_to_json(at.b)}});
    }
    j["decomposition"] = std::move(atoms);
  }
  return j;
}

nlohmann::json to_json(const BoundsReport& b) {
  return {{"units", "bits"},
          {"chi_star", number(b.chi_star)},
          {"log2_d", number(b.log2_d)},
          {"e_r", to_json(b.e_r, false)},
          {"lower_bound_ok", b.lower_bound_ok},
          {"upper_bound_ok", b.upper_bound_ok},
          {"pvp_ok", b.pvp_ok},
          {"tolerance", number(b.tolerance)},
          {"verdict", to_string(b.verdict)}};
}

nlohmann::json to_json(const PvpCheck& p) {
  return {{"units", "bits"},
          {"lhs", number(p.lhs)},
          {"e_r_upper", number(p.e_r_upper)},
          {"e_r_lower", optional_number(p.e_r_lower)},
          {"ok", p.ok},
          {"verdict", to_string(p.verdict)}};
}

nlohmann::json to_json(const BellDiagonalCheck& c) {
  return {{"units", "bits"},
          {"lambda", c.lambda},
          {"chi_star", number(c.chi_star)},
          {"e_r_upper", number(c.e_r_upper)},
          {"e_r_lower", optional_number(c.e_r_lower)},
          {"residual", number(c.residual)}};
}

}  // namespace dcopt
