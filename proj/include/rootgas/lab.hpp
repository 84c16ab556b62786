#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rootgas/io.hpp"

namespace rootgas {

inline constexpr const char* kOutputRootEnv = "ROOTGAS_OUT";

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2, kExitIo = 3 };

/// Written to run.json in the run directory and appended to runs.jsonl next
/// to it.
struct RunRecord {
  std::string command;
  std::string config_hash;
  std::string version;
  std::string started;  // UTC, ISO 8601
  std::filesystem::path run_dir;
  std::vector<std::string> outputs;  // relative to run_dir
  std::vector<std::pair<std::string, double>> timings;
  int exit_code = 0;
};

/// `out` key, then $ROOTGAS_OUT, then ./rootgas-out.
std::filesystem::path output_root(const Config& cfg);

/// <root>/<command>-<hash>/run-NNNN, NNNN the first unused index.
std::filesystem::path make_run_dir(const std::filesystem::path& root, const std::string& command,
                                   const std::string& hash);

struct CommandOutcome {
  int exit_code = kExitOk;
  RunRecord record;
};

CommandOutcome cmd_sample(const Config& cfg);
CommandOutcome cmd_gibbs(const Config& cfg);
CommandOutcome cmd_rate(const Config& cfg);
CommandOutcome cmd_equilibrium(const Config& cfg);
CommandOutcome cmd_validate(const Config& cfg);

/// Dispatches by name and maps exceptions to exit codes; failures are
/// reported on `err` as one JSON object.
int run_command(const std::string& name, const Config& cfg, std::ostream& err);

/// "circle:4096", "fibonacci:2000[:twist]", "fubini_study:N", "kac_sphere:N:R[:offset]",
/// "product:T:P".
GridMeasure parse_grid(const std::string& text);

}  // namespace rootgas
