#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "roguewave/experiment.hpp"

namespace roguewave {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation check failed
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitResource = 5;

// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "ROGUEWAVE_OUT";

enum class Command { Sweep, NBeta, Validate };

struct Invocation {
  Command command = Command::Sweep;
  ExperimentConfig config;
  std::filesystem::path out_dir;
  std::vector<std::size_t> n_beta_list{100, 200, 300, 400};
  // Non-empty when --help was requested; nothing else should run.
  std::string help;
};

// Parses command-line arguments (without the program name). A --config FILE
// is read first; flags given on the command line override its values.
// Throws UsageError naming the offending key.
Invocation parse_config(const std::vector<std::string>& args);

// Config echo. Execution knobs (workers, keep_samples) are not part of it.
nlohmann::json config_to_json(const ExperimentConfig& config);

// Applies the keys present in `j` on top of `base`. Throws UsageError on
// unknown keys or bad values.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

// Flags that make parse_config rebuild `config` exactly.
std::vector<std::string> config_to_args(const ExperimentConfig& config);

// Files written by one command.
struct OutputBundle {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;
};

OutputBundle cmd_sweep(const Invocation& inv, std::ostream& log);
OutputBundle cmd_nbeta(const Invocation& inv, std::ostream& log);
// Prints the JSON report; returns kExitOk or kExitFailure.
int cmd_validate(const Invocation& inv, std::ostream& out);

// Full CLI entry point: parse, dispatch, map exceptions to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roguewave
