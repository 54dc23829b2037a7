#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "crowdbench/scenario.hpp"

namespace crowdbench {

/// Malformed scenario or manifest; the message names the offending key.
class ScenarioFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(std::string_view text);

void save_scenario(const std::filesystem::path& path, const ScenarioSpec& spec);
ScenarioSpec load_scenario(const std::filesystem::path& path);

inline constexpr const char* kManifestName = "manifest.json";

/// Writes one <id>.json per scenario plus the manifest.
void write_suite(const std::filesystem::path& dir, const SuiteSpec& suite);
SuiteSpec load_suite(const std::filesystem::path& dir);

}  // namespace crowdbench
