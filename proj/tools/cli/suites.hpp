// Randomized verification suites behind `dcopt verify`.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dcopt::cli {

enum class SuiteStatus { passed, inconclusive, violated };
std::string to_string(SuiteStatus s);

struct SuiteOptions {
  int d = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t states = 1;             // theorem1: random states, each audited with `trials` ensembles
  std::optional<double> residual_tol; // overrides the per-suite residual tolerance
  double audit_tol = 1e-7;
  double bounds_tol = 1e-3;
};

struct SuiteResult {
  SuiteStatus status = SuiteStatus::passed;
  nlohmann::json report;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1", "lemma2", "donald", "theorem1", "theorem2"};
  return names;
}

/// Throws std::invalid_argument for an unknown suite or unsupported d.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace dcopt::cli
