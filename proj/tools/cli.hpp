#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "crowdbench/navigation.hpp"
#include "crowdbench/runner.hpp"

namespace crowdbench::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "CROWDBENCH_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "crowdbench-out";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRunFailures = 2;

struct GenerateCommand {
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct RunCommand {
  std::filesystem::path suite;
  std::vector<ControllerKind> controllers;
  int jobs = 1;
  RecordMode records = RecordMode::MetricsOnly;
  std::filesystem::path out;
  std::vector<int> densities;  // empty = all
};

struct ReportCommand {
  std::filesystem::path in;
};

using Command = std::variant<GenerateCommand, RunCommand, ReportCommand>;

/// Bad command line; `what()` holds the diagnostic plus usage text.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Throws UsageError.
Command cli_parse(const std::vector<std::string>& argv);

/// Suite filtered and packaged for run_suite.
RunPlan make_run_plan(const RunCommand& command);

/// Entry point; returns the process exit code.
int cli_main(const std::vector<std::string>& argv);

}  // namespace crowdbench::cli
