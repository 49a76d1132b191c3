#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "perispec/types.hpp"

namespace perispec {

struct RunConfig {
  std::uint64_t seed = 7;
  double tol = kDefaultTol;
  int trials = 50;
  int max_dim = 5;
  std::string out_path;  // optional copy of the summary
};

struct PropertyOutcome {
  std::string name;
  int trials = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::string note;                // e.g. tolerance-induced failures
  nlohmann::json counterexample;   // first failing input, null if none
};

struct FuzzSummary {
  RunConfig config;
  std::vector<PropertyOutcome> outcomes;
  bool all_passed = true;
};

// Randomized property battery over the whole library. Deterministic for a
// fixed config; the summary is byte-identical across runs.
FuzzSummary run_fuzz(const RunConfig& config);

nlohmann::json summary_to_json(const FuzzSummary& summary);

}  // namespace perispec
