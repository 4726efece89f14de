#pragma once

#include <nlohmann/json.hpp>

#include "complobs/measurements.hpp"
#include "complobs/recovery.hpp"
#include "complobs/states.hpp"
#include "complobs/theorems.hpp"

namespace complobs {

// JSON wire formats. States and operators use
//   {"dims": [["label", dim], ...], "re": [...], "im": [...]}
// with matrices flattened row-major; reload is exact to within 1e−12 relative
// error (doubles are serialized with enough digits to round-trip).

nlohmann::json to_json(const DimList& dims);
DimList dimlist_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PureState& psi);
PureState state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LabeledOperator& op);
LabeledOperator operator_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Isometry& u);
Isometry isometry_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Povm& povm);
Povm povm_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GuessReport& report, bool include_measurement = false);
nlohmann::json to_json(const SecureReport& report);
nlohmann::json to_json(const TheoremCertificate& cert);
nlohmann::json to_json(const DualityReport& report);

}  // namespace complobs
