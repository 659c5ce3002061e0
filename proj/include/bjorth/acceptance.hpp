#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bjorth {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string details;
  double seconds = 0.0;
};

struct Criterion {
  std::string name;
  std::string intent;
  std::function<CriterionResult(std::uint64_t seed)> run;
};

/// The acceptance criteria, in order. Each is self-contained and derives its
/// RNG stream from (seed, name).
const std::vector<Criterion>& acceptance_criteria();

/// Runs all criteria (optionally in parallel) and returns results in
/// registration order. Scheduling never changes the outcome.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            bool parallel = true);

}  // namespace bjorth
