#include "vag/report.hpp"

namespace vag {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skipped:
      return "SKIPPED";
  }
  return "?";
}

void CheckReport::add_violation(std::string what) {
  ++violation_count;
  status = CheckStatus::Fail;
  if (violations.size() < kMaxStoredViolations) violations.push_back(std::move(what));
}

std::string CheckReport::summary_line() const {
  std::string line = "CHECK " + name + " " + to_string(status);
  if (!detail.empty()) line += " " + detail;
  return line;
}

std::string CheckReport::text() const {
  std::string out = summary_line() + "\n";
  for (const auto& v : violations) out += "  violation: " + v + "\n";
  if (violation_count > violations.size())
    out += "  ... " + std::to_string(violation_count - violations.size()) + " more\n";
  return out;
}

}  // namespace vag
