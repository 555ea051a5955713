#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace propcalc::verify {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  double seconds = 0;
  /// First few failing cases.
  std::vector<std::string> failures;
  std::uint64_t failure_count = 0;
  /// One-line description of what was covered.
  std::string summary;
  /// Named tallies for callers that need more than pass/fail.
  std::map<std::string, std::uint64_t> counters;
};

struct Context {
  /// Directory holding golden.txt.
  std::string fixtures_dir;
  /// CLI binary for the exit-code checks; skipped when empty.
  std::string cli_path;
  std::uint64_t fuzz_inputs = 100000;
  std::uint64_t seed = 0x5eed;
};

std::vector<std::string> suite_names();
/// Throws propcalc::Error for an unknown suite.
SuiteResult run_suite(const std::string& name, const Context& ctx);

/// "name  PASS  cases  seconds" table.
std::string format_table(const std::vector<SuiteResult>& results);

}  // namespace propcalc::verify
