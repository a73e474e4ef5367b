#ifndef COBOSON_SERIALIZE_HPP
#define COBOSON_SERIALIZE_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "coboson/engine.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/stats.hpp"

namespace coboson {

// JSON wire forms. NaN entries (skipped branches) map to null and back.

nlohmann::json to_json(const SchmidtDistribution& dist);
SchmidtDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ChiTable& table);
ChiTable chi_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OccupationConfig& cfg);
OccupationConfig occupation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EngineReport& report);
EngineReport report_from_json(const nlohmann::json& j);

/// Field-for-field comparison treating NaN == NaN (for round-trip checks).
bool reports_equal(const EngineReport& a, const EngineReport& b);

} // namespace coboson

#endif
