#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "crowdbench/report.hpp"
#include "json.hpp"

namespace crowdbench {
namespace {

using Json = nlohmann::ordered_json;

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               std::size_t columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != columns) {
      throw std::runtime_error(path.filename().string() + ": expected " + std::to_string(columns) +
                               " columns, got " + std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

void write_report(const std::filesystem::path& dir, const BenchmarkReport& report) {
  std::filesystem::create_directories(dir);
  const auto f = format_double;

  {
    auto out = open_out(dir / "scenarios.csv");
    for (std::size_t k = 0; k < kScenarioColumns.size(); ++k) {
      out << (k ? "," : "") << kScenarioColumns[k];
    }
    out << '\n';
    for (const auto& r : report.scenarios) {
      out << r.scenario_id << ',' << to_string(r.controller) << ',' << to_string(r.flow) << ','
          << r.agents << ',' << r.crowd_config << ',' << r.status << ',' << f(r.stats.duration)
          << ',' << f(r.stats.length) << ',' << f(r.stats.jerkiness) << ','
          << f(r.efficiency.time_ratio) << ',' << f(r.efficiency.length_ratio) << ','
          << f(r.efficiency.smoothness_ratio) << ',' << f(r.effect.nbr_vel) << ','
          << f(r.effect.nbr_reac) << ',' << f(r.prox) << ',' << f(r.colliding) << ','
          << f(r.scenario_time) << ',' << f(r.collision_time) << ',' << r.n_collisions << ','
          << f(r.energy_sum) << ',' << r.flags() << ',' << sanitize(r.error) << '\n';
    }
  }
  {
    auto out = open_out(dir / "solo.csv");
    out << "controller,status,T,L,J\n";
    for (const auto& s : report.solos) {
      out << to_string(s.controller) << ',' << s.status << ',' << f(s.stats.duration) << ','
          << f(s.stats.length) << ',' << f(s.stats.jerkiness) << '\n';
    }
  }
  {
    auto out = open_out(dir / "collisions.csv");
    out << "controller,scenario_id,t,agent_id,segment,m_ref,v_rel,energy\n";
    for (const auto& r : report.scenarios) {
      for (const auto& e : r.events) {
        out << to_string(r.controller) << ',' << r.scenario_id << ',' << f(e.t) << ','
            << e.agent_id << ',' << to_string(e.segment) << ',' << f(e.m_ref) << ','
            << f(e.v_rel) << ',' << f(e.energy) << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "radar.csv");
    out << "controller,subset,metric,mean,std,n\n";
    for (const auto& row : report.radar) {
      out << to_string(row.controller) << ',' << row.subset << ',' << row.metric << ','
          << f(row.value.mean) << ',' << f(row.value.stddev) << ',' << row.value.n << '\n';
    }
  }
  {
    auto out = open_out(dir / "histogram.csv");
    out << "controller,bin_low,bin_high,count\n";
    for (const auto& c : report.controllers) {
      if (c.rates.histogram.empty()) continue;
      const int top = c.rates.histogram.rbegin()->first;
      for (int bin = 0; bin <= top; ++bin) {
        const auto it = c.rates.histogram.find(bin);
        out << to_string(c.controller) << ',' << f(energy_bin_low(bin)) << ','
            << f(energy_bin_high(bin)) << ',' << (it == c.rates.histogram.end() ? 0 : it->second)
            << '\n';
      }
    }
  }
  {
    Json summary;
    summary["crowd_configs"] = report.crowd_configs;
    summary["notes"] = {
        {"rvo_controller", "holonomic ORCA velocity projected onto (v, w) by heading-error gain"},
        {"radar_values", "means and population std devs of metrics clamped to [0, 1.5]"}};
    Json controllers = Json::object();
    for (const auto& c : report.controllers) {
      controllers[to_string(c.controller)] = {{"runs", c.runs},
                                              {"failed", c.failed},
                                              {"n_collisions", c.rates.n_collisions},
                                              {"total_time", c.rates.total_time},
                                              {"energy_sum", c.rates.energy_sum},
                                              {"f_c", c.rates.f_c},
                                              {"Q", c.rates.q}};
    }
    summary["controllers"] = std::move(controllers);
    summary["flagged"] = report.flagged;
    Json expected = Json::array();
    for (const auto& r : report.scenarios) expected.push_back({r.scenario_id, to_string(r.controller)});
    for (const auto& flag : report.flagged) {
      if (flag.rfind("missing:", 0) != 0) continue;
      const auto body = flag.substr(8);
      const auto slash = body.rfind('/');
      expected.push_back({body.substr(0, slash), body.substr(slash + 1)});
    }
    summary["expected_cells"] = std::move(expected);
    auto out = open_out(dir / "summary.json");
    out << summary.dump(1) << '\n';
  }
}

StoredResults read_results(const std::filesystem::path& dir) {
  StoredResults stored;
  std::map<std::pair<std::string, ControllerKind>, std::size_t> index;
  for (const auto& row : read_csv(dir / "scenarios.csv", kScenarioColumns.size())) {
    ScenarioResult r;
    r.scenario_id = row[0];
    r.controller = controller_kind_from_string(row[1]);
    r.flow = flow_kind_from_string(row[2]);
    r.agents = std::stoi(row[3]);
    r.crowd_config = row[4];
    r.status = row[5];
    r.stats = {parse_double(row[6]), parse_double(row[7]), parse_double(row[8])};
    r.efficiency.time_ratio = parse_double(row[9]);
    r.efficiency.length_ratio = parse_double(row[10]);
    r.efficiency.smoothness_ratio = parse_double(row[11]);
    r.effect.nbr_vel = parse_double(row[12]);
    r.effect.nbr_reac = parse_double(row[13]);
    r.prox = parse_double(row[14]);
    r.colliding = parse_double(row[15]);
    r.scenario_time = parse_double(row[16]);
    r.collision_time = parse_double(row[17]);
    r.n_collisions = std::stoi(row[18]);
    r.energy_sum = parse_double(row[19]);
    r.efficiency.timed_out = row[20].find("timed_out") != std::string::npos;
    r.effect.no_neighbors = row[20].find("no_neighbors") != std::string::npos;
    r.error = row[21];
    index[{r.scenario_id, r.controller}] = stored.scenarios.size();
    stored.scenarios.push_back(std::move(r));
  }
  for (const auto& row : read_csv(dir / "collisions.csv", 8)) {
    const auto it = index.find({row[1], controller_kind_from_string(row[0])});
    if (it == index.end()) throw std::runtime_error("collisions.csv: unknown run " + row[1] + "/" + row[0]);
    CollisionEvent e;
    e.t = parse_double(row[2]);
    e.agent_id = std::stoi(row[3]);
    e.segment = body_segment_from_string(row[4]);
    e.m_ref = parse_double(row[5]);
    e.v_rel = parse_double(row[6]);
    e.energy = parse_double(row[7]);
    stored.scenarios[it->second].events.push_back(e);
  }
  for (const auto& row : read_csv(dir / "solo.csv", 5)) {
    stored.solos.push_back({controller_kind_from_string(row[0]), row[1],
                            {parse_double(row[2]), parse_double(row[3]), parse_double(row[4])}});
  }

  std::ifstream in(dir / "summary.json", std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + (dir / "summary.json").string());
  const Json summary = Json::parse(in);
  stored.crowd_configs = summary.at("crowd_configs").get<std::vector<std::string>>();
  for (const auto& cell : summary.at("expected_cells")) {
    stored.expected.push_back(
        {cell.at(0).get<std::string>(), controller_kind_from_string(cell.at(1).get<std::string>())});
  }
  return stored;
}

}  // namespace crowdbench
