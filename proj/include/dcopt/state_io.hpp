// JSON state files and state specifications.
//
// State file: {"d": <local dimension>, "matrix": [[[re, im], ...], ...]}, the
// d^2 x d^2 matrix row-major with factor A as the slow index.
#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "dcopt/operator_core.hpp"
#include "dcopt/state_factory.hpp"

namespace dcopt {

/// Malformed or unreadable input (as opposed to a well-formed matrix that
/// fails the state invariants, which raises InvariantViolation).
class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Validates against tol. A matrix that passes only because tol is looser
/// than the defaults is replaced by its nearest density matrix.
DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol = {});
nlohmann::json state_to_json(const DensityMatrix& rho);

DensityMatrix load_state(const std::filesystem::path& path, const Tolerances& tol = {});
void save_state(const DensityMatrix& rho, const std::filesystem::path& path);

/// {"kind": "werner", "d": 2, "params": [0.9], "seed": 3, "bell": "psi_minus"};
/// everything but "kind" is optional. Throws StateFileError.
StateSpec state_spec_from_json(const nlohmann::json& j);
nlohmann::json state_spec_to_json(const StateSpec& spec);

}  // namespace dcopt
