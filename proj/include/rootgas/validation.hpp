#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rootgas {

/// One checked quantity: `statistic` compared against `bound`.
struct CheckRecord {
  std::string check;
  long n = 0;
  double statistic = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<CheckRecord> records;
  double seconds = 0.0;
  double budget = 0.0;  // runtime budget in seconds (reported)
  bool pass = false;
};

inline constexpr int kCriterionCount = 13;

/// Runs acceptance criterion `id` (1..13). Deterministic for a fixed seed.
CriterionResult run_criterion(int id, std::uint64_t seed = 20240611);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed = 20240611);

}  // namespace rootgas
