#include "crowdbench/record_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace crowdbench {

using Json = nlohmann::ordered_json;

std::string record_to_json_line(const StepRecord& record) {
  Json j;
  j["t"] = record.t;
  j["robot"] = {{"x", record.robot.x},
                {"y", record.robot.y},
                {"theta", record.robot.theta},
                {"v", record.robot.v},
                {"w", record.robot.w}};
  Json agents = Json::array();
  for (const auto& a : record.agents) {
    agents.push_back({{"id", a.id}, {"x", a.x}, {"y", a.y}, {"vx", a.vx}, {"vy", a.vy}});
  }
  j["agents"] = std::move(agents);
  Json contacts = Json::array();
  for (const auto& c : record.contacts) {
    contacts.push_back({{"id", c.agent_id}, {"depth", c.depth}, {"v_rel", c.v_rel}, {"onset", c.onset}});
  }
  j["contacts"] = std::move(contacts);
  if (record.lidar) {
    Json mask = Json::array();
    for (const auto& m : record.lidar->mask) mask.push_back(m ? Json(*m) : Json(nullptr));
    j["lidar"] = {{"ranges", record.lidar->ranges}, {"mask", std::move(mask)}};
  }
  return j.dump();
}

StepRecord record_from_json_line(std::string_view line) {
  const Json j = Json::parse(line);
  StepRecord r;
  r.t = j.at("t").get<double>();
  const auto& robot = j.at("robot");
  r.robot = {robot.at("x").get<double>(), robot.at("y").get<double>(),
             robot.at("theta").get<double>(), robot.at("v").get<double>(),
             robot.at("w").get<double>()};
  for (const auto& a : j.at("agents")) {
    r.agents.push_back({a.at("id").get<int>(), a.at("x").get<double>(), a.at("y").get<double>(),
                        a.at("vx").get<double>(), a.at("vy").get<double>()});
  }
  for (const auto& c : j.at("contacts")) {
    Contact contact;
    contact.agent_id = c.at("id").get<int>();
    contact.depth = c.at("depth").get<double>();
    contact.v_rel = c.at("v_rel").get<double>();
    contact.onset = c.at("onset").get<bool>();
    r.contacts.push_back(contact);
  }
  if (j.contains("lidar")) {
    LidarScan scan;
    scan.ranges = j["lidar"].at("ranges").get<std::vector<double>>();
    for (const auto& m : j["lidar"].at("mask")) {
      scan.mask.push_back(m.is_null() ? std::nullopt : std::optional<int>(m.get<int>()));
    }
    r.lidar = std::move(scan);
  }
  return r;
}

void write_records(const std::filesystem::path& path, const std::vector<StepRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
}

std::vector<StepRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<StepRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(record_from_json_line(line));
  }
  return out;
}

}  // namespace crowdbench
