#pragma once

#include <json.hpp>

#include "rankdyn/dynamics.hpp"
#include "rankdyn/models.hpp"
#include "rankdyn/walker.hpp"

namespace rankdyn {

// JSON views of the report types. Keys are fixed and objects are emitted with
// sorted keys, so serialized output is byte-stable for identical inputs.
// Non-finite values map to null.

nlohmann::json to_json(const DistributionFit& fit);
nlohmann::json to_json(const SigmoidFit& fit);
nlohmann::json to_json(const DynamicsProfile& profile);
nlohmann::json to_json(const CalibrationResult& result);

} // namespace rankdyn
