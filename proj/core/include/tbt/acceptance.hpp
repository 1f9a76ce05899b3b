#pragma once

// End-to-end verification suite: each criterion recomputes a closed-form
// value or an exhaustive count and compares it with an independent route.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tbt/orbit.hpp"

namespace tbt::acceptance {

struct Options {
  std::uint64_t orbit_budget = kDefaultOrbitBudget;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  /// Seed for the random polygon corpus.
  std::uint64_t seed = 20240611;
  /// Restrict to these criterion ids; empty means all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Short human-readable summary of the computed values.
  std::string detail;
  double seconds = 0.0;
  /// Wall-clock limit in seconds; 0 means none.
  double limit_seconds = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<CriterionResult(const Options&)> run;
};

const std::vector<Criterion>& criteria();

/// Runs the selected criteria in id order. A criterion fails if its check
/// fails, if it throws, or if it exceeds its time limit.
std::vector<CriterionResult> run_all(const Options& options,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  traverso-consistency  ...".
std::string format_line(const CriterionResult& result);

}  // namespace tbt::acceptance
