#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vag {

enum class CheckStatus { Pass, Fail, Skipped };

const char* to_string(CheckStatus s);

/// Outcome of one verification pass. Only the first few violations are kept
/// verbatim; violation_count counts all of them.
struct CheckReport {
  static constexpr std::size_t kMaxStoredViolations = 20;

  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  std::uint64_t checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;

  void add_violation(std::string what);
  bool passed() const noexcept { return status == CheckStatus::Pass; }

  /// "CHECK <name> <PASS|FAIL|SKIPPED> <detail>"
  std::string summary_line() const;
  /// Human-readable block: summary line plus stored violations.
  std::string text() const;
};

}  // namespace vag
