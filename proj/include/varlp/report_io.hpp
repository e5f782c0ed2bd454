#pragma once

#include <string>

#include "json.hpp"
#include "varlp/harness.hpp"
#include "varlp/testing_report.hpp"

namespace varlp {

// Report payloads are plain JSON with sorted keys and no timestamps, so a
// rerun with the same seeds is byte identical. Infinite constants are
// serialized as the string "infinite".
nlohmann::json testing_report_json(const TestingReport& rep);
nlohmann::json verification_report_json(const VerificationReport& rep);
TestingReport testing_report_from_json(const nlohmann::json& j);

// refinement table as plot data with header x,value,series
std::string refinement_csv(const VerificationReport& rep);

} // namespace varlp
