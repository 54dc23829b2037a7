#include "crowdbench/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace crowdbench {
namespace {

using Json = nlohmann::ordered_json;

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!j.is_object()) throw ScenarioFormatError(where + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto key : allowed) known = known || item.key() == key;
    if (!known) throw ScenarioFormatError("unknown key '" + item.key() + "' in " + where);
  }
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ScenarioFormatError("missing key '" + std::string(key) + "' in " + where);
  return j.at(key);
}

template <typename T>
void read_opt(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Json pose_to_json(const Pose& p) { return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}}; }

Pose pose_from_json(const Json& j, const std::string& where) {
  check_keys(j, {"x", "y", "theta"}, where);
  Pose p;
  read_opt(j, "x", p.x);
  read_opt(j, "y", p.y);
  read_opt(j, "theta", p.theta);
  return p;
}

Json world_to_json(const ScenarioSpec& s) {
  const auto& r = s.robot;
  Json robot = {{"start", pose_to_json(r.start)},
                {"radius", r.radius},
                {"mass", r.mass},
                {"top_height", r.top_height},
                {"v_max", r.limits.v_max},
                {"v_min", r.limits.v_min},
                {"a_max", r.limits.a_max},
                {"w_max", r.limits.w_max},
                {"alpha_max", r.limits.alpha_max}};
  const auto& o = s.settings.overlap;
  Json overlap = {{"agent_mass", o.agent_mass},
                  {"robot_kinematic", o.robot_kinematic},
                  {"iterations", o.iterations}};
  const auto& l = s.settings.lidar;
  Json lidar = {{"enabled", s.settings.record_lidar},
                {"beams", l.beams},
                {"angular_span", l.angular_span},
                {"max_range", l.max_range},
                {"range_noise", l.range_noise},
                {"dropout", l.dropout},
                {"mount_x", l.mount_x},
                {"mount_yaw", l.mount_yaw}};
  return {{"length", s.world.length}, {"width", s.world.width}, {"dt", s.settings.dt},
          {"robot", robot},           {"overlap", overlap},     {"lidar", lidar}};
}

void world_from_json(const Json& j, ScenarioSpec& s) {
  check_keys(j, {"length", "width", "dt", "robot", "overlap", "lidar"}, "world");
  read_opt(j, "length", s.world.length);
  read_opt(j, "width", s.world.width);
  read_opt(j, "dt", s.settings.dt);
  if (!(s.settings.dt > 0.0)) throw ScenarioFormatError("world.dt must be positive");
  if (j.contains("robot")) {
    const auto& r = j.at("robot");
    check_keys(r,
               {"start", "radius", "mass", "top_height", "v_max", "v_min", "a_max", "w_max",
                "alpha_max"},
               "world.robot");
    if (r.contains("start")) s.robot.start = pose_from_json(r.at("start"), "world.robot.start");
    read_opt(r, "radius", s.robot.radius);
    read_opt(r, "mass", s.robot.mass);
    read_opt(r, "top_height", s.robot.top_height);
    read_opt(r, "v_max", s.robot.limits.v_max);
    read_opt(r, "v_min", s.robot.limits.v_min);
    read_opt(r, "a_max", s.robot.limits.a_max);
    read_opt(r, "w_max", s.robot.limits.w_max);
    read_opt(r, "alpha_max", s.robot.limits.alpha_max);
  }
  if (j.contains("overlap")) {
    const auto& o = j.at("overlap");
    check_keys(o, {"agent_mass", "robot_kinematic", "iterations"}, "world.overlap");
    read_opt(o, "agent_mass", s.settings.overlap.agent_mass);
    read_opt(o, "robot_kinematic", s.settings.overlap.robot_kinematic);
    read_opt(o, "iterations", s.settings.overlap.iterations);
  }
  if (j.contains("lidar")) {
    const auto& l = j.at("lidar");
    check_keys(l,
               {"enabled", "beams", "angular_span", "max_range", "range_noise", "dropout",
                "mount_x", "mount_yaw"},
               "world.lidar");
    read_opt(l, "enabled", s.settings.record_lidar);
    read_opt(l, "beams", s.settings.lidar.beams);
    read_opt(l, "angular_span", s.settings.lidar.angular_span);
    read_opt(l, "max_range", s.settings.lidar.max_range);
    read_opt(l, "range_noise", s.settings.lidar.range_noise);
    read_opt(l, "dropout", s.settings.lidar.dropout);
    read_opt(l, "mount_x", s.settings.lidar.mount_x);
    read_opt(l, "mount_yaw", s.settings.lidar.mount_yaw);
  }
}

Json crowd_to_json(const CrowdModelConfig& c) {
  Json params;
  switch (c.algorithm) {
    case CrowdAlgorithm::SocialForces:
      params = {{"tau_relax", c.social_forces.tau_relax},
                {"strength", c.social_forces.strength},
                {"range", c.social_forces.range},
                {"wall_range", c.social_forces.wall_range}};
      break;
    case CrowdAlgorithm::RvoSampled:
      params = {{"directions", c.rvo.directions},
                {"speeds", c.rvo.speeds},
                {"speed_factor", c.rvo.speed_factor},
                {"collision_weight", c.rvo.collision_weight},
                {"min_ttc", c.rvo.min_ttc}};
      break;
    case CrowdAlgorithm::Orca: params = Json::object(); break;
  }
  return {{"label", c.label},
          {"algorithm", to_string(c.algorithm)},
          {"horizon", c.horizon},
          {"reactive_to_robot", c.reactive_to_robot},
          {"preferred_speed", c.preferred_speed},
          {"max_accel", c.max_accel},
          {"interaction_range", c.interaction_range},
          {"max_neighbors", c.max_neighbors},
          {"params", params}};
}

CrowdModelConfig crowd_from_json(const Json& j) {
  check_keys(j,
             {"label", "algorithm", "horizon", "reactive_to_robot", "preferred_speed", "max_accel",
              "interaction_range", "max_neighbors", "params"},
             "crowd_config");
  CrowdModelConfig c;
  read_opt(j, "label", c.label);
  try {
    c.algorithm = crowd_algorithm_from_string(require(j, "algorithm", "crowd_config").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ScenarioFormatError(std::string("crowd_config.algorithm: ") + e.what());
  }
  read_opt(j, "horizon", c.horizon);
  read_opt(j, "reactive_to_robot", c.reactive_to_robot);
  read_opt(j, "preferred_speed", c.preferred_speed);
  read_opt(j, "max_accel", c.max_accel);
  read_opt(j, "interaction_range", c.interaction_range);
  read_opt(j, "max_neighbors", c.max_neighbors);
  if (!(c.horizon > 0.0)) throw ScenarioFormatError("crowd_config.horizon must be positive");
  if (j.contains("params")) {
    const auto& p = j.at("params");
    switch (c.algorithm) {
      case CrowdAlgorithm::SocialForces:
        check_keys(p, {"tau_relax", "strength", "range", "wall_range"}, "crowd_config.params");
        read_opt(p, "tau_relax", c.social_forces.tau_relax);
        read_opt(p, "strength", c.social_forces.strength);
        read_opt(p, "range", c.social_forces.range);
        read_opt(p, "wall_range", c.social_forces.wall_range);
        break;
      case CrowdAlgorithm::RvoSampled:
        check_keys(p, {"directions", "speeds", "speed_factor", "collision_weight", "min_ttc"},
                   "crowd_config.params");
        read_opt(p, "directions", c.rvo.directions);
        read_opt(p, "speeds", c.rvo.speeds);
        read_opt(p, "speed_factor", c.rvo.speed_factor);
        read_opt(p, "collision_weight", c.rvo.collision_weight);
        read_opt(p, "min_ttc", c.rvo.min_ttc);
        break;
      case CrowdAlgorithm::Orca: check_keys(p, {}, "crowd_config.params"); break;
    }
  }
  return c;
}

Json controller_to_json(const ControllerSpec& c) {
  const auto& d = c.params.dwa;
  const auto& r = c.params.rvo;
  return {{"kind", to_string(c.kind)},
          {"params",
           {{"heading_gain", c.params.heading_gain},
            {"dwa",
             {{"v_samples", d.v_samples},
              {"w_samples", d.w_samples},
              {"heading_weight", d.heading_weight},
              {"clearance_weight", d.clearance_weight},
              {"velocity_weight", d.velocity_weight},
              {"horizon", d.horizon},
              {"clearance_cap", d.clearance_cap},
              {"wall_spacing", d.wall_spacing}}},
            {"rvo",
             {{"horizon", r.horizon},
              {"preferred_speed", r.preferred_speed},
              {"neighbor_range", r.neighbor_range},
              {"max_neighbors", r.max_neighbors},
              {"responsibility", r.responsibility}}}}}};
}

ControllerSpec controller_from_json(const Json& j) {
  check_keys(j, {"kind", "params"}, "controller");
  ControllerSpec c;
  try {
    c.kind = controller_kind_from_string(require(j, "kind", "controller").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ScenarioFormatError(std::string("controller.kind: ") + e.what());
  }
  if (!j.contains("params")) return c;
  const auto& p = j.at("params");
  check_keys(p, {"heading_gain", "dwa", "rvo"}, "controller.params");
  read_opt(p, "heading_gain", c.params.heading_gain);
  if (p.contains("dwa")) {
    const auto& d = p.at("dwa");
    check_keys(d,
               {"v_samples", "w_samples", "heading_weight", "clearance_weight", "velocity_weight",
                "horizon", "clearance_cap", "wall_spacing"},
               "controller.params.dwa");
    auto& o = c.params.dwa;
    read_opt(d, "v_samples", o.v_samples);
    read_opt(d, "w_samples", o.w_samples);
    read_opt(d, "heading_weight", o.heading_weight);
    read_opt(d, "clearance_weight", o.clearance_weight);
    read_opt(d, "velocity_weight", o.velocity_weight);
    read_opt(d, "horizon", o.horizon);
    read_opt(d, "clearance_cap", o.clearance_cap);
    read_opt(d, "wall_spacing", o.wall_spacing);
    if (o.heading_weight < 0 || o.clearance_weight < 0 || o.velocity_weight < 0 ||
        o.heading_weight + o.clearance_weight + o.velocity_weight <= 0) {
      throw ScenarioFormatError("controller.params.dwa: weights must be >= 0 and not all zero");
    }
  }
  if (p.contains("rvo")) {
    const auto& r = p.at("rvo");
    check_keys(r, {"horizon", "preferred_speed", "neighbor_range", "max_neighbors", "responsibility"},
               "controller.params.rvo");
    auto& o = c.params.rvo;
    read_opt(r, "horizon", o.horizon);
    read_opt(r, "preferred_speed", o.preferred_speed);
    read_opt(r, "neighbor_range", o.neighbor_range);
    read_opt(r, "max_neighbors", o.max_neighbors);
    read_opt(r, "responsibility", o.responsibility);
    if (!(o.horizon > 0.0)) throw ScenarioFormatError("controller.params.rvo.horizon must be positive");
  }
  return c;
}

}  // namespace

std::string scenario_to_json(const ScenarioSpec& s) {
  Json j;
  j["id"] = s.id;
  j["world"] = world_to_json(s);
  j["flow"] = to_string(s.flow);
  j["density"] = {{"agents", s.density.agents}, {"per_m2", s.density.per_m2}};
  j["crowd_config"] = crowd_to_json(s.crowd);
  if (s.controller) j["controller"] = controller_to_json(*s.controller);
  j["seed"] = s.seed;
  Json agents = Json::array();
  for (const auto& a : s.agents) {
    agents.push_back({{"id", a.id},
                      {"x", a.position.x},
                      {"y", a.position.y},
                      {"vx", a.velocity.x},
                      {"vy", a.velocity.y},
                      {"radius", a.radius},
                      {"preferred_speed", a.preferred_speed},
                      {"group", to_string(a.flow_group)}});
  }
  j["agents"] = std::move(agents);
  j["goal"] = {{"axis", {s.goal.axis.x, s.goal.axis.y}},
               {"target_progress", s.goal.target_progress},
               {"time_limit", s.goal.time_limit}};
  return j.dump(1);
}

ScenarioSpec scenario_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioFormatError(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, {"id", "world", "flow", "density", "crowd_config", "controller", "seed", "agents", "goal"},
             "scenario");
  try {
    ScenarioSpec s;
    s.id = require(j, "id", "scenario").get<std::string>();
    world_from_json(require(j, "world", "scenario"), s);
    try {
      s.flow = flow_kind_from_string(require(j, "flow", "scenario").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ScenarioFormatError(std::string("flow: ") + e.what());
    }
    const auto& density = require(j, "density", "scenario");
    check_keys(density, {"agents", "per_m2"}, "density");
    s.density.agents = require(density, "agents", "density").get<int>();
    s.density.per_m2 = require(density, "per_m2", "density").get<double>();
    s.crowd = crowd_from_json(require(j, "crowd_config", "scenario"));
    if (j.contains("controller")) s.controller = controller_from_json(j.at("controller"));
    s.seed = require(j, "seed", "scenario").get<std::uint64_t>();

    for (const auto& a : require(j, "agents", "scenario")) {
      check_keys(a, {"id", "x", "y", "vx", "vy", "radius", "preferred_speed", "group"}, "agents[]");
      AgentState agent;
      agent.id = require(a, "id", "agents[]").get<int>();
      agent.position = {require(a, "x", "agents[]").get<double>(), require(a, "y", "agents[]").get<double>()};
      read_opt(a, "vx", agent.velocity.x);
      read_opt(a, "vy", agent.velocity.y);
      read_opt(a, "radius", agent.radius);
      read_opt(a, "preferred_speed", agent.preferred_speed);
      try {
        agent.flow_group = flow_group_from_string(require(a, "group", "agents[]").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ScenarioFormatError(std::string("agents[].group: ") + e.what());
      }
      agent.goal_direction = flow_direction(agent.flow_group);
      if (!(agent.radius > 0.0)) throw ScenarioFormatError("agents[].radius must be positive");
      s.agents.push_back(agent);
    }
    for (std::size_t i = 1; i < s.agents.size(); ++i) {
      if (s.agents[i].id <= s.agents[i - 1].id) {
        throw ScenarioFormatError("agents[] ids must be strictly ascending");
      }
    }

    const auto& goal = require(j, "goal", "scenario");
    check_keys(goal, {"axis", "target_progress", "time_limit"}, "goal");
    if (goal.contains("axis")) {
      const auto axis = goal.at("axis").get<std::vector<double>>();
      if (axis.size() != 2) throw ScenarioFormatError("goal.axis must have two components");
      s.goal.axis = {axis[0], axis[1]};
    }
    read_opt(goal, "target_progress", s.goal.target_progress);
    read_opt(goal, "time_limit", s.goal.time_limit);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioFormatError(std::string("scenario: ") + e.what());
  }
}

void save_scenario(const std::filesystem::path& path, const ScenarioSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << scenario_to_json(spec) << '\n';
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return scenario_from_json(ss.str());
  } catch (const ScenarioFormatError& e) {
    throw ScenarioFormatError(path.filename().string() + ": " + e.what());
  }
}

void write_suite(const std::filesystem::path& dir, const SuiteSpec& suite) {
  std::filesystem::create_directories(dir);
  Json manifest;
  manifest["master_seed"] = suite.master_seed;
  Json configs = Json::array();
  for (const auto& c : standard_crowd_configs()) configs.push_back(crowd_to_json(c));
  manifest["crowd_configs"] = std::move(configs);
  Json files = Json::array();
  for (const auto& s : suite.scenarios) {
    const std::string name = s.id + ".json";
    save_scenario(dir / name, s);
    files.push_back(name);
  }
  manifest["scenarios"] = std::move(files);
  std::ofstream out(dir / kManifestName, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << manifest.dump(1) << '\n';
}

SuiteSpec load_suite(const std::filesystem::path& dir) {
  std::ifstream in(dir / kManifestName, std::ios::binary);
  if (!in) throw std::runtime_error("no " + std::string(kManifestName) + " in " + dir.string());
  Json manifest;
  try {
    manifest = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioFormatError(std::string("manifest: ") + e.what());
  }
  check_keys(manifest, {"master_seed", "crowd_configs", "scenarios"}, "manifest");
  SuiteSpec suite;
  suite.master_seed = require(manifest, "master_seed", "manifest").get<std::uint64_t>();
  for (const auto& name : require(manifest, "scenarios", "manifest")) {
    suite.scenarios.push_back(load_scenario(dir / name.get<std::string>()));
  }
  return suite;
}

}  // namespace crowdbench
