#pragma once

#include <json.hpp>

#include "lambdacf/lambda.hpp"

namespace lambdacf {

nlohmann::json cyclo_to_json(const CycloNumber& x);
CycloNumber cyclo_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const LambdaReport& r);
LambdaReport report_from_json(const nlohmann::json& j);

}  // namespace lambdacf
