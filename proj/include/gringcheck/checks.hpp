#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gringcheck/characters.hpp"
#include "gringcheck/moebius_wall.hpp"
#include "gringcheck/restriction.hpp"

namespace gring {

struct CheckContext {
  LevelParams params;
  u64 seed = 1;
  long trials = 10;
  std::string prop6_path;  // only for prop6
};

struct CheckResult {
  std::string check;
  std::string group;
  bool pass = true;
  bool skipped = false;
  std::string skip_reason;
  long trials = 0;
  std::string counterexample;  // serialized first failure, empty if none
  double time_ms = 0;
};

// stable check identifiers (canonical order)
const std::vector<std::string>& check_names();
bool is_known_check(const std::string& name);

CheckResult run_check(const std::string& check, const std::string& group_id,
                      const CheckContext& ctx);

// size policy for the character-layer checks
bool hom_layer_allowed(const Group& G);

}  // namespace gring
