#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "relfree/rng.hpp"
#include "relfree/tspace.hpp"

namespace relfree {

struct CheckConfig {
  PrimeField field{3};
  std::uint64_t seed = 0;
  Budget budget;
  int jobs = 0;
};

struct CheckResult {
  std::string id;
  nlohmann::json params;
  std::string verdict;  // "pass", "fail" or "skipped"
  nlohmann::json witness;
  double wall_ms = 0.0;

  bool passed() const { return verdict == "pass"; }
};

// Registered check ids, in report order.
const std::vector<std::string>& check_ids();

CheckResult run_check(const std::string& id, const CheckConfig& config);

// Runs the given ids (all registered ones when empty); results come back
// ordered by id.
std::vector<CheckResult> run_checks(const std::vector<std::string>& ids,
                                    const CheckConfig& config);

// Machine-readable report. Deterministic for fixed (p, seed, budgets):
// wall-clock times are deliberately left out.
nlohmann::json report_json(const std::vector<CheckResult>& results,
                           const CheckConfig& config);

// Seeded random polynomial: at most `max_terms` words of degree at most
// `max_deg` over x1..xn, nonzero coefficients.
FreePoly random_free_poly(PrimeField field, int n_vars, int max_deg,
                          int max_terms, SplitMix64& rng);

}  // namespace relfree
