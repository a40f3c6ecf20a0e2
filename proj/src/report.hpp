#pragma once

#include <string>

#include "json.hpp"
#include "metrics.hpp"
#include "models.hpp"

namespace greyfc::report {

nlohmann::json metric_block_json(const metrics::MetricBlock &block);

// JSON document for a fit report; keys are emitted in sorted order and
// doubles with round-trip-exact formatting, so identical reports serialize
// to identical bytes.
nlohmann::json to_json(const models::FitReport &report);

std::string to_json_string(const models::FitReport &report);

}  // namespace greyfc::report
