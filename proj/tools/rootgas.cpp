#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootgas/lab.hpp"

namespace {

struct Shortcut {
  const char* flag;
  const char* key;
  const char* help;
};

// typed shortcuts for common keys; anything else goes through --set
const std::map<std::string, std::vector<Shortcut>> kShortcuts = {
    {"sample", {{"--model", "model", "kac | elliptic | orthogonal"}, {"--field", "field", "complex | real"},
                {"--n", "n", "comma-separated degrees"}, {"--seeds", "seeds", "seeds per degree"},
                {"--seed", "seed", "base seed"}}},
    {"gibbs", {{"--model", "model", "kac | elliptic | orthogonal"}, {"--field", "field", "complex | real"},
               {"--n", "n", "number of particles"}, {"--steps", "steps", "chain length"},
               {"--seed", "seed", "chain seed"}, {"--beta", "beta", "inverse temperature (default n^2)"}}},
    {"rate", {{"--model", "model", "kac | elliptic | orthogonal"}, {"--field", "field", "complex | real"},
              {"--measure", "measure", "measure CSV"}, {"--grid", "grid", "built-in grid, e.g. circle:4096"},
              {"--M", "M", "truncation level"}}},
    {"equilibrium", {{"--model", "model", "kac | elliptic | orthogonal"}, {"--grid", "grid", "optimization grid"},
                     {"--tolerance", "tolerance", "certificate tolerance"}, {"--M", "M", "truncation level"}}},
    {"validate", {{"--checks", "checks", "comma-separated criterion ids"}, {"--seed", "seed", "suite seed"}}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polynomial roots, Coulomb gases and rate functions"};
  app.require_subcommand(1);
  std::string config_path, out;
  std::vector<std::string> sets;
  std::map<std::string, std::map<std::string, std::string>> flags;
  for (const auto& [name, shortcuts] : kShortcuts) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "key = value config file");
    sub->add_option("-o,--out", out, "output root (default $ROOTGAS_OUT, then ./rootgas-out)");
    sub->add_option("-s,--set", sets, "key=value override, repeatable");
    for (const auto& s : shortcuts) sub->add_option(s.flag, flags[name][s.key], s.help);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rootgas::kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  rootgas::Config cfg;
  try {
    if (!config_path.empty()) cfg = rootgas::Config::load(config_path);
    for (const auto& [key, value] : flags[name])
      if (!value.empty()) cfg.set(key, value);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw rootgas::UsageError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!out.empty()) cfg.set("out", out);
  } catch (const rootgas::UsageError& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}, {"exit_code", rootgas::kExitUsage}}.dump() << "\n";
    return rootgas::kExitUsage;
  } catch (const rootgas::IoError& e) {
    std::cerr << nlohmann::json{{"error", "io"}, {"message", e.what()}, {"exit_code", rootgas::kExitIo}}.dump() << "\n";
    return rootgas::kExitIo;
  }
  return rootgas::run_command(name, cfg, std::cerr);
}
