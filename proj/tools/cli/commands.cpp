#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcopt/capacity.hpp"
#include "dcopt/parallel.hpp"
#include "dcopt/rel_ent.hpp"
#include "dcopt/report.hpp"
#include "dcopt/state_factory.hpp"
#include "dcopt/state_io.hpp"
#include "dcopt/weyl_ensemble.hpp"
#include "suites.hpp"

namespace dcopt::cli {

namespace {

// Raised for argument combinations CLI11 cannot express.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StateOptions {
  std::string kind;
  int d = 2;
  std::uint64_t seed = 0;
  std::vector<double> params;
  std::string which = "psi_minus";
  std::string file;
};

struct OutputOptions {
  std::string out;
  std::string format = "json";
};

struct ToleranceOptions {
  double herm = Tolerances{}.hermiticity;
  double trace = Tolerances{}.trace;
  double neg = Tolerances{}.negativity;
  std::optional<double> residual;
  double audit = AuditConfig{}.tolerance;
  double bounds = 1e-3;

  Tolerances state_tolerances() const {
    Tolerances t;
    t.hermiticity = herm;
    t.trace = trace;
    t.negativity = neg;
    return t;
  }
};

void add_state_options(CLI::App* app, StateOptions& s) {
  app->add_option("--kind", s.kind, "named or random state family")
      ->check(CLI::IsMember({"bell", "max_entangled", "werner", "isotropic", "bell_diagonal", "random_mixed",
                             "random_pure", "random_product", "random_separable"}));
  app->add_option("--d", s.d, "local dimension")->check(CLI::Range(2, 8));
  app->add_option("--seed", s.seed, "seed for random families");
  app->add_option("--param,--params", s.params, "family parameters")->delimiter(',');
  app->add_option("--which", s.which, "Bell state label")
      ->check(CLI::IsMember({"psi_minus", "psi_plus", "phi_minus", "phi_plus"}));
  app->add_option("--file", s.file, "JSON state file");
}

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--out", o.out, "write the report here instead of stdout");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_tolerance_options(CLI::App* app, ToleranceOptions& t) {
  app->add_option("--tol-herm", t.herm, "state hermiticity tolerance")->check(CLI::PositiveNumber);
  app->add_option("--tol-trace", t.trace, "state trace tolerance")->check(CLI::PositiveNumber);
  app->add_option("--tol-neg", t.neg, "admissible negative eigenvalue")->check(CLI::PositiveNumber);
  app->add_option("--tol-residual", t.residual, "override of the suite residual bounds")
      ->check(CLI::PositiveNumber);
  app->add_option("--tol-audit", t.audit, "chi <= chi* + tol in the audit")->check(CLI::PositiveNumber);
  app->add_option("--tol-bounds", t.bounds, "slack on the E_R bracket inequalities")->check(CLI::PositiveNumber);
}

struct LoadedState {
  DensityMatrix rho;
  nlohmann::json source;
};

LoadedState load(const StateOptions& s, const ToleranceOptions& tol) {
  if (!s.file.empty() && !s.kind.empty()) throw UsageError("give either --file or --kind, not both");
  if (!s.file.empty()) {
    DensityMatrix rho = load_state(s.file, tol.state_tolerances());
    return {rho, {{"file", s.file}}};
  }
  if (s.kind.empty()) throw UsageError("a state is required: --kind or --file");
  StateSpec spec;
  spec.kind = *parse_state_kind(s.kind);
  spec.d = s.d;
  spec.seed = s.seed;
  spec.params = s.params;
  spec.bell = *parse_bell_label(s.which);
  return {build(spec), state_spec_to_json(spec)};
}

void require_json(const OutputOptions& o) {
  if (o.format != "json") throw UsageError("csv output is only available for sweep");
}

void emit(const std::string& text, const OutputOptions& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_capacity(const StateOptions& s, const OutputOptions& o, const ToleranceOptions& t, std::size_t trials,
                 std::uint64_t audit_seed, std::ostream& out) {
  require_json(o);
  const LoadedState st = load(s, t);
  std::optional<AuditConfig> audit;
  if (trials > 0) {
    AuditConfig cfg;
    cfg.trials = trials;
    cfg.seed = audit_seed;
    cfg.tolerance = t.audit;
    if (t.residual) cfg.decomposition_tolerance = *t.residual;
    audit = cfg;
  }
  const CapacityReport report = capacity_report(st.rho, audit);
  nlohmann::json j = to_json(report);
  j["command"] = "capacity";
  j["d"] = st.rho.dims().a;
  j["state"] = st.source;
  emit(dump(j), o, out);
  return report.audit && !report.audit->passed() ? kViolation : kOk;
}

int cmd_verify(const std::vector<std::string>& suites_in, SuiteOptions opt, const OutputOptions& o,
               const ToleranceOptions& t, std::ostream& out, std::ostream& err) {
  require_json(o);
  opt.residual_tol = t.residual;
  opt.audit_tol = t.audit;
  opt.bounds_tol = t.bounds;
  std::vector<std::string> suites;
  for (const auto& name : suites_in) {
    if (name == "all") {
      suites.insert(suites.end(), suite_names().begin(), suite_names().end());
    } else {
      suites.push_back(name);
    }
  }
  nlohmann::json reports = nlohmann::json::array();
  SuiteStatus overall = SuiteStatus::passed;
  for (const auto& name : suites) {
    SuiteResult r = run_suite(name, opt);
    if (r.status == SuiteStatus::violated) {
      err << "verify: suite " << name << " violated (seed " << opt.seed << ", d " << opt.d << ")\n";
      overall = SuiteStatus::violated;
    } else if (r.status == SuiteStatus::inconclusive) {
      err << "verify: suite " << name << " inconclusive (seed " << opt.seed << ", d " << opt.d << ")\n";
      if (overall == SuiteStatus::passed) overall = SuiteStatus::inconclusive;
    }
    reports.push_back(std::move(r.report));
  }
  const nlohmann::json j{{"units", "bits"},
                         {"command", "verify"},
                         {"suites", std::move(reports)},
                         {"status", to_string(overall)}};
  emit(dump(j), o, out);
  return overall == SuiteStatus::passed ? kOk : kViolation;
}

struct SweepOptions {
  std::string family;
  std::string grid;
  std::vector<double> values;
  int d = 2;
};

std::vector<double> parse_grid(const std::string& text) {
  // start:stop:step
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed grid \"" + text + "\"");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError("malformed grid \"" + text + "\"");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw UsageError("grid must be start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0) || stop < start) throw UsageError("grid needs step > 0 and stop >= start");
  const double span = (stop - start) / step;
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  if (count > 100000) throw UsageError("grid too large");
  std::vector<double> out;
  // rounding keeps 0.25 + 1 * 0.05 printing as 0.3
  for (long i = 0; i < count; ++i) out.push_back(std::round((start + i * step) * 1e12) / 1e12);
  return out;
}

DensityMatrix family_state(const SweepOptions& s, double x) {
  if (s.family == "werner") return werner_state(x);
  if (s.family == "bell_diagonal") return bell_diagonal_state(x, 1.0 - x, 0.0, 0.0);
  return isotropic_state(s.d, x);
}

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_sweep(const SweepOptions& s, const OutputOptions& o, const ToleranceOptions& t, std::ostream& out) {
  if (s.grid.empty() == s.values.empty()) throw UsageError("give exactly one of --grid or --values");
  const std::vector<double> grid = s.grid.empty() ? s.values : parse_grid(s.grid);
  if (grid.size() < 2) throw UsageError("a sweep needs at least 2 grid points");
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) throw UsageError("sweep parameters must lie in [0, 1]");
  }
  if (s.family != "isotropic" && s.d != 2) throw UsageError(s.family + " is a two-qubit family");

  struct Row {
    double chi_star = 0.0;
    ERelResult e_r;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const DensityMatrix rho = family_state(s, grid[i]);
    rows[i].chi_star = chi_star(rho);
    rows[i].e_r = relative_entropy_of_entanglement(rho);
  });

  const double log2d = std::log2(static_cast<double>(s.d));
  bool violated = false;
  std::string text;
  nlohmann::json jrows = nlohmann::json::array();
  if (o.format == "csv") text = "param,chi_star,e_r_upper,e_r_lower,chi_star_minus_er,bound_slack\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Row& r = rows[i];
    const double minus = r.chi_star - r.e_r.upper;
    std::optional<double> slack;
    if (r.e_r.lower) slack = std::min(minus, *r.e_r.lower + log2d - r.chi_star);
    if (slack && *slack < -t.bounds) violated = true;
    if (o.format == "csv") {
      text += csv_number(grid[i]) + "," + csv_number(r.chi_star) + "," + csv_number(r.e_r.upper) + "," +
              (r.e_r.lower ? csv_number(*r.e_r.lower) : "") + "," + csv_number(minus) + "," +
              (slack ? csv_number(*slack) : "") + "\n";
    } else {
      jrows.push_back({{"param", grid[i]},
                       {"chi_star", number(r.chi_star)},
                       {"e_r_upper", number(r.e_r.upper)},
                       {"e_r_lower", r.e_r.lower ? number(*r.e_r.lower) : nlohmann::json(nullptr)},
                       {"chi_star_minus_er", number(minus)},
                       {"bound_slack", slack ? number(*slack) : nlohmann::json(nullptr)},
                       {"converged", r.e_r.converged}});
    }
  }
  if (o.format == "json") {
    text = dump({{"units", "bits"},
                 {"command", "sweep"},
                 {"family", s.family},
                 {"d", s.d},
                 {"bracket", bracket_label(s.d)},
                 {"rows", std::move(jrows)}});
  }
  emit(text, o, out);
  return violated ? kViolation : kOk;
}

int cmd_erel(const StateOptions& s, const OutputOptions& o, const ToleranceOptions& t, bool witness,
             std::uint64_t optimizer_seed, std::ostream& out) {
  require_json(o);
  const LoadedState st = load(s, t);
  if (!st.rho.is_composite()) throw UsageError("erel needs a bipartite state");
  ErelConfig cfg;
  cfg.seed = optimizer_seed;
  const ERelResult e = relative_entropy_of_entanglement(st.rho, cfg);
  nlohmann::json j = to_json(e, witness);
  j["command"] = "erel";
  j["d"] = st.rho.dims().a;
  j["chi_star"] = number(chi_star(st.rho));
  j["state"] = st.source;
  emit(dump(j), o, out);
  return kOk;
}

int cmd_twirl(const StateOptions& s, const OutputOptions& o, const ToleranceOptions& t, std::ostream& out) {
  require_json(o);
  const LoadedState st = load(s, t);
  const int d = st.rho.dims().a;
  const AverageStateStar avg = average_state_star(st.rho);
  // full twirl of the A marginal: sum_i U_i X U_i^dagger = d Tr(X) I
  const ComplexMatrix x = partial_trace(st.rho, Subsystem::A).matrix();
  const ComplexMatrix twirled = twirl(x, d);
  const double operator_residual = max_abs_diff(twirled, static_cast<double>(d) * x.trace() * identity(d));
  const nlohmann::json j{{"units", "bits"},
                         {"command", "twirl-check"},
                         {"d", d},
                         {"state", st.source},
                         {"one_sided_residual", number(avg.residual)},
                         {"operator_twirl_residual", number(operator_residual)},
                         {"average_state", matrix_to_json(avg.explicit_sum.matrix())},
                         {"closed_form", matrix_to_json(avg.closed_form.matrix())}};
  emit(dump(j), o, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal dense-coding capacity and relative entropy of entanglement", "dcopt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all subcommand help");

  StateOptions state;
  OutputOptions output;
  ToleranceOptions tol;

  auto* capacity = app.add_subcommand("capacity", "chi* and its structural residuals for one state");
  add_state_options(capacity, state);
  add_output_options(capacity, output);
  add_tolerance_options(capacity, tol);
  std::size_t capacity_trials = 0;
  std::uint64_t audit_seed = 1;
  capacity->add_option("--trials", capacity_trials, "random ensembles in the optimality audit (0 skips it)");
  capacity->add_option("--audit-seed", audit_seed, "seed of the audit");

  auto* verify = app.add_subcommand("verify", "randomized verification suites");
  std::vector<std::string> suites{"all"};
  SuiteOptions suite_opt;
  verify->add_option("--suite", suites, "lemma1|lemma2|donald|theorem1|theorem2|all")
      ->delimiter(',')
      ->check(CLI::IsMember({"lemma1", "lemma2", "donald", "theorem1", "theorem2", "all"}));
  verify->add_option("--trials", suite_opt.trials, "random trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--d", suite_opt.d, "local dimension")->check(CLI::Range(2, 8));
  verify->add_option("--seed", suite_opt.seed, "master seed");
  verify->add_option("--states", suite_opt.states, "theorem1: states audited with --trials ensembles each")
      ->check(CLI::PositiveNumber);
  add_output_options(verify, output);
  add_tolerance_options(verify, tol);

  auto* sweep = app.add_subcommand("sweep", "chi* and the E_R bracket along a one-parameter family");
  SweepOptions sweep_opt;
  sweep->add_option("--family", sweep_opt.family, "werner|bell_diagonal|isotropic")
      ->required()
      ->check(CLI::IsMember({"werner", "bell_diagonal", "isotropic"}));
  sweep->add_option("--grid", sweep_opt.grid, "start:stop:step");
  sweep->add_option("--values", sweep_opt.values, "explicit comma-separated grid")->delimiter(',');
  sweep->add_option("--d", sweep_opt.d, "local dimension (isotropic)")->check(CLI::Range(2, 4));
  add_output_options(sweep, output);
  add_tolerance_options(sweep, tol);

  auto* erel = app.add_subcommand("erel", "relative entropy of entanglement bracket");
  add_state_options(erel, state);
  add_output_options(erel, output);
  add_tolerance_options(erel, tol);
  bool no_witness = false;
  std::uint64_t optimizer_seed = ErelConfig{}.seed;
  erel->add_flag("--no-witness", no_witness, "omit the witness matrix and decomposition");
  erel->add_option("--optimizer-seed", optimizer_seed, "seed of the product-state multistarts");

  auto* twirl_cmd = app.add_subcommand("twirl-check", "Weyl twirl identities on one state");
  add_state_options(twirl_cmd, state);
  add_output_options(twirl_cmd, output);
  add_tolerance_options(twirl_cmd, tol);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    // prints help (to out) or the parse error (to err)
    return app.exit(e, out, err) == 0 ? kOk : kBadInput;
  }

  try {
    if (capacity->parsed()) return cmd_capacity(state, output, tol, capacity_trials, audit_seed, out);
    if (verify->parsed()) return cmd_verify(suites, suite_opt, output, tol, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_opt, output, tol, out);
    if (erel->parsed()) return cmd_erel(state, output, tol, !no_witness, optimizer_seed, out);
    if (twirl_cmd->parsed()) return cmd_twirl(state, output, tol, out);
  } catch (const StateFileError& e) {
    err << "dcopt: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvariantViolation& e) {
    err << "dcopt: invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    err << "dcopt: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "dcopt: internal consistency check failed: " << e.what() << "\n";
    return kInvariantViolation;
  }
  return kBadInput;
}

}  // namespace dcopt::cli
