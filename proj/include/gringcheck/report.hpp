#pragma once

#include <string>
#include <vector>

#include "gringcheck/checks.hpp"

namespace gring {

struct RunConfig {
  LevelParams params;
  std::vector<std::string> groups;
  std::vector<std::string> checks;
  long trials = 10;
  u64 seed = 1;
  std::string prop6_table;  // optional path

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);
  void validate() const;  // throws ConfigError
};

struct VerificationReport {
  RunConfig config;
  std::vector<CheckResult> results;  // sorted by (check, group)
  bool all_pass = true;

  std::string to_json(bool with_timings) const;
};

// run all (check, group) tasks; jobs <= 1 runs serially. Deterministic for a
// fixed config and seed regardless of the job count.
VerificationReport run_suite(const RunConfig& config, int jobs);

std::string catalog_json();
std::string catalog_text();

}  // namespace gring
