#pragma once

#include <string>

#include "omni/runner.hpp"

namespace omni {

enum class ReportFormat { Text, Json };

inline constexpr const char* kReportSchema = "omni-report/1";

struct EmitOptions {
  ReportFormat format = ReportFormat::Text;
  bool timing = false;  // JSON only; text always shows timing
};

nlohmann::json report_to_json(const RunReport& r, bool timing = false);
// Sorted keys, two-space indentation, floats with 17 significant digits,
// non-finite floats as null.
std::string dump_json(const nlohmann::json& j);
std::string emit_report(const RunReport& r, const EmitOptions& opts);

}  // namespace omni
