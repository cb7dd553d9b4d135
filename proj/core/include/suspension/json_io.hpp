#pragma once

#include "suspension/growth.hpp"
#include "suspension/point_process.hpp"
#include "suspension/region.hpp"

#include <json.hpp>

#include <iosfwd>

namespace suspension {

// Config object: {"m": [3,3,3], "repeat_last": true, "cap_depth": 64,
// "truncation_k": 30}. Missing fields keep their defaults.
GrowthConfig growth_config_from_json(const nlohmann::json& j);
nlohmann::json growth_config_to_json(const GrowthConfig& cfg);

// Regions: [{"column": {"class": 0} | {"prefix": "110"}, "levels": [a, b]},
// ...] with masses as exact strings "p/2^q". Levels serialize as numbers
// when they fit in 64 bits, decimal strings otherwise.
nlohmann::json region_to_json(const RegionSet& region);
RegionSet region_from_json(const nlohmann::json& j, const GrowthSpec& spec);

// Configurations stream as JSON lines: a header object carrying region,
// seed trace and tail mass, then one object per atom
// {"prefix": "110", "level": "14"} (plus "mark" when marked).
void write_configuration(std::ostream& out, const CountingMeasure& nu);
void write_configuration(std::ostream& out, const MarkedCountingMeasure& nu);

}  // namespace suspension
