#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vag/group.hpp"

namespace vag {

enum class OutputFormat { Text, Summary };

/// Settings shared by all subcommands.
struct RunConfig {
  std::string group = "H";  // preset name or spec-file path
  Int radius = -1;          // -1: the subcommand's default
  std::size_t max_elements = 200'000'000;
  std::size_t max_geodesics = 1'000'000;
  std::uint64_t max_words = 50'000'000;
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 1;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;
// refute: verified witness, by variant
inline constexpr int kNonGeodesicAccepted = 10;
inline constexpr int kUncoveredElement = 11;
inline constexpr int kPumpedNonGeodesic = 12;
}  // namespace exit_code

/// Preset name ("H", "G") or path to a group spec file.
VAGroup load_group(const std::string& selector);

/// Runs the command line `args` (without the program name). Output is
/// byte-stable for a fixed configuration.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vag
