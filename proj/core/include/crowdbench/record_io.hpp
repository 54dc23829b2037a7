#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crowdbench/world.hpp"

namespace crowdbench {

/// One JSON object per step:
///   {"t":..,"robot":{"x","y","theta","v","w"},"agents":[{"id","x","y","vx","vy"}],
///    "contacts":[{"id","depth","v_rel","onset"}],"lidar"?:{"ranges":[..],"mask":[id|null]}}
/// Doubles are written as the shortest decimal that round-trips.
std::string record_to_json_line(const StepRecord& record);
StepRecord record_from_json_line(std::string_view line);

void write_records(const std::filesystem::path& path, const std::vector<StepRecord>& records);
std::vector<StepRecord> read_records(const std::filesystem::path& path);

}  // namespace crowdbench
