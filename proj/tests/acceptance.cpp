// Runs every acceptance criterion at its stated tolerance; one line each.
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "rootgas/validation.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    ids.resize(rootgas::kCriterionCount);
    std::iota(ids.begin(), ids.end(), 1);
  }
  int failures = 0;
  for (int id : ids) {
    const auto r = rootgas::run_criterion(id);
    std::printf("criterion %2d %-28s %s  (%.1fs, budget %.0fs)\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.seconds, r.budget);
    for (const auto& c : r.records)
      std::printf("    %-40s n=%-6ld statistic=%.6g bound=%.6g %s\n", c.check.c_str(), c.n, c.statistic, c.bound,
                  c.pass ? "ok" : "FAIL");
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, ids.size());
  return failures == 0 ? 0 : 1;
}
