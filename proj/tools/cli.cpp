#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "crowdbench/scenario_io.hpp"

namespace crowdbench::cli {
namespace {

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return kDefaultOutputDir;
}

std::vector<ControllerKind> parse_controllers(const std::string& list) {
  std::vector<ControllerKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const ControllerKind kind = controller_kind_from_string(item);
    if (std::find(out.begin(), out.end(), kind) != out.end()) {
      throw std::invalid_argument("controller '" + item + "' listed twice");
    }
    out.push_back(kind);
  }
  if (out.empty()) throw std::invalid_argument("empty controller list");
  return out;
}

struct Parser {
  CLI::App app{"Crowd-robot navigation benchmark", "crowdbench"};
  GenerateCommand generate;
  RunCommand run;
  ReportCommand report;
  std::string controllers = "baseline,dwa,rvo";
  std::string records = "metrics";
  std::vector<int> densities;
  bool low_density = false;
  std::string generate_out;
  std::string run_out;
  CLI::App* generate_cmd = nullptr;
  CLI::App* run_cmd = nullptr;
  CLI::App* report_cmd = nullptr;

  Parser() {
    app.require_subcommand(1);
    generate_cmd = app.add_subcommand("generate", "Write the standard 100-scenario suite");
    generate_cmd->add_option("--seed", generate.seed, "Master seed")->required();
    generate_cmd->add_option("--out", generate_out, "Suite directory");

    run_cmd = app.add_subcommand("run", "Run a suite and write records and reports");
    run_cmd->add_option("--suite", run.suite, "Suite directory (with manifest.json)")->required();
    run_cmd->add_option("--controllers", controllers, "Comma list of baseline,dwa,rvo");
    run_cmd->add_option("--jobs", run.jobs, "Parallel runs")->check(CLI::PositiveNumber);
    run_cmd->add_option("--records", records, "full | metrics")
        ->check(CLI::IsMember({"full", "metrics"}));
    run_cmd->add_option("--out", run_out, "Output directory");
    run_cmd->add_option("--densities", densities, "Only cells with these agent counts")
        ->delimiter(',');
    run_cmd->add_flag("--low-density", low_density, "Only the 50-agent cells");

    report_cmd = app.add_subcommand("report", "Re-aggregate the reports of a finished run");
    report_cmd->add_option("--in", report.in, "Run output directory")->required();
  }
};

}  // namespace

Command cli_parse(const std::vector<std::string>& argv) {
  Parser p;
  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    p.app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(p.app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + p.app.help());
  }

  if (p.generate_cmd->parsed()) {
    p.generate.out = p.generate_out.empty() ? default_output_dir() : std::filesystem::path(p.generate_out);
    return p.generate;
  }
  if (p.report_cmd->parsed()) return p.report;

  RunCommand run = p.run;
  try {
    run.controllers = parse_controllers(p.controllers);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--controllers: ") + e.what() + "\n\n" + p.run_cmd->help());
  }
  if (p.low_density && !p.densities.empty()) {
    throw UsageError("--low-density and --densities are contradictory; pick one\n\n" + p.run_cmd->help());
  }
  run.densities = p.low_density ? std::vector<int>{kDensityLevels[0].agents} : p.densities;
  for (const int d : run.densities) {
    try {
      density_for_agents(d);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--densities: ") + e.what());
    }
  }
  run.records = p.records == "full" ? RecordMode::Full : RecordMode::MetricsOnly;
  run.out = p.run_out.empty() ? default_output_dir() : std::filesystem::path(p.run_out);
  return run;
}

RunPlan make_run_plan(const RunCommand& command) {
  RunPlan plan;
  plan.suite = load_suite(command.suite);
  if (!command.densities.empty()) {
    auto& s = plan.suite.scenarios;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [&](const ScenarioSpec& spec) {
                             return std::find(command.densities.begin(), command.densities.end(),
                                              spec.density.agents) == command.densities.end();
                           }),
            s.end());
  }
  plan.controllers = command.controllers;
  plan.output_dir = command.out;
  plan.jobs = command.jobs;
  plan.records = command.records;
  return plan;
}

namespace {

void print_summary(const BenchmarkReport& report) {
  for (const auto& c : report.controllers) {
    std::printf("%-9s runs=%d failed=%d collisions=%d T=%.1fs f_c=%.4f 1/s Q=%.4f J/s\n",
                to_string(c.controller), c.runs, c.failed, c.rates.n_collisions,
                c.rates.total_time, c.rates.f_c, c.rates.q);
  }
  for (const auto& flag : report.flagged) std::printf("flagged: %s\n", flag.c_str());
}

int execute(const GenerateCommand& cmd) {
  const SuiteSpec suite = generate_suite(cmd.seed);
  write_suite(cmd.out, suite);
  std::printf("wrote %zu scenarios to %s\n", suite.scenarios.size(), cmd.out.string().c_str());
  return kExitOk;
}

int execute(const RunCommand& cmd) {
  const RunPlan plan = make_run_plan(cmd);
  const auto start = std::chrono::steady_clock::now();
  std::size_t done = 0;
  const std::size_t total = plan.suite.scenarios.size() * plan.controllers.size() + plan.controllers.size();
  const SuiteRun run = run_suite(plan, [&](const std::string& msg) {
    std::fprintf(stderr, "[%zu/%zu] %s\n", ++done, total, msg.c_str());
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  print_summary(run.report);
  std::printf("%zu crowd runs + %zu solo runs in %.1f s; report in %s\n",
              run.report.scenarios.size(), run.report.solos.size(), seconds,
              plan.output_dir.string().c_str());
  return run.exit_code();
}

int execute(const ReportCommand& cmd) {
  StoredResults stored = read_results(cmd.in);
  const BenchmarkReport report = aggregate(std::move(stored.scenarios), std::move(stored.solos),
                                           stored.expected, std::move(stored.crowd_configs));
  write_report(cmd.in, report);
  print_summary(report);
  return report.flagged.empty() ? kExitOk : kExitRunFailures;
}

}  // namespace

int cli_main(const std::vector<std::string>& argv) {
  Command command;
  try {
    command = cli_parse(argv);
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  try {
    return std::visit([](const auto& cmd) { return execute(cmd); }, command);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace crowdbench::cli
