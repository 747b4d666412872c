#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spd/featurize.hpp"

namespace spd::checks {

struct CheckResult {
  std::string name;
  std::string statement;
  bool passed = false;
  std::uint64_t trials = 0;
  // Worst observed (measured - allowed); negative slack means headroom.
  double max_violation = 0;
  double elapsed_seconds = 0;
  std::string details;
};

// Suite names, in acceptance-criterion order:
//   stability, tightness, partition, norm, reconstruction, wasserstein,
//   witness, budget, subset-lipschitz, kernel-peak
std::vector<std::string> suite_names();

// Runs one suite with its pinned parameters; trials == 0 keeps the default
// trial count, otherwise overrides it where the suite is trial-based.
CheckResult run_suite(const std::string& name, std::uint64_t seed, std::uint64_t trials = 0);

std::vector<CheckResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed,
                                    std::uint64_t trials = 0);

}  // namespace spd::checks
