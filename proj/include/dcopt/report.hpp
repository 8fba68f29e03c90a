// JSON views of the result types. Entropies are bits throughout and every
// top-level report carries "units": "bits". Non-finite numbers are written as
// the strings "inf", "-inf" or "nan" since JSON has no literal for them.
#pragma once

#include <json.hpp>

#include "dcopt/capacity.hpp"
#include "dcopt/rel_ent.hpp"
#include "dcopt/su_basis.hpp"

namespace dcopt {

nlohmann::json number(double x);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

nlohmann::json to_json(const CapacityReport& r);
nlohmann::json to_json(const AuditOutcome& a);
nlohmann::json to_json(const ChiStarBreakdown& b);
nlohmann::json to_json(const Lemma2Check& c);
nlohmann::json to_json(const DonaldCheck& c);
nlohmann::json to_json(const HSDecomposition& hs);
/// include_witness adds the witness matrix and the product decomposition.
nlohmann::json to_json(const ERelResult& e, bool include_witness = true);
nlohmann::json to_json(const BoundsReport& b);
nlohmann::json to_json(const PvpCheck& p);
nlohmann::json to_json(const BellDiagonalCheck& c);

/// "exact" for d = 2, "ppt_relaxation" for d = 3 (the lower end bounds the
/// PPT minimum, which can sit strictly below E_R), "upper_only" above.
std::string bracket_label(int d);

}  // namespace dcopt
