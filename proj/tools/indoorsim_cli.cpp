// Command-line front end: run / validate / score / report / actions.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "indoorsim/generation_http.hpp"
#include "indoorsim/runner.hpp"
#include "indoorsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace indoorsim;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_validate(const std::string& scenario_path) {
  ScenarioConfig cfg;
  try {
    cfg = parse_scenario_text(slurp(scenario_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto diags = validate(cfg);
  for (const auto& d : diags)
    std::cout << (d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ")
              << d.message << "\n";
  if (has_errors(diags)) return 1;
  std::cout << "ok: " << cfg.locations.size() << " locations, "
            << cfg.receptacles.size() << " receptacles, " << cfg.objects.size()
            << " objects, " << cfg.agents.size() << " agents\n";
  return 0;
}

int cmd_score(const std::string& snapshot_path, const std::string& goals_path) {
  WorldState w = restore_snapshot(json::parse(slurp(snapshot_path)));
  GoalSpec goals = goal_from_json(json::parse(slurp(goals_path)));
  auto report = score(w, goals);
  std::cout << score_report_json(report).dump(2) << "\n";
  return 0;
}

int cmd_report(const std::string& log_path, const std::string& kind,
               const std::string& format) {
  auto events = load_events(log_path);
  if (kind == "occupancy") {
    auto r = occupancy_report(events);
    std::cout << (format == "json" ? occupancy_json(r).dump(2) + "\n"
                                   : occupancy_csv(r));
  } else if (kind == "activity") {
    auto r = activity_report(events);
    std::cout << (format == "json" ? activity_json(r).dump(2) + "\n"
                                   : activity_csv(r));
  } else if (kind == "wellbeing") {
    std::cout << wellbeing_json(wellbeing_report(events)).dump(2) << "\n";
  } else if (kind == "resource-stress") {
    std::cout << resource_stress_json(resource_stress_report(events)).dump(2)
              << "\n";
  } else {
    std::cerr << "error: unknown report kind " << kind << "\n";
    return 2;
  }
  return 0;
}

struct RunOptions {
  std::string scenario;
  std::string goals;
  std::string mode = "task-solving";
  std::string policy = "scripted";
  std::string playbook;
  std::string recorded;
  std::string model_endpoint;
  std::string model = "default";
  double temperature = 0.6;
  std::uint64_t seed = 0;
  int duration = -1;
  bool no_tp = false;
  bool no_st = false;
  std::string preference = "water";
  std::string out_dir;
};

int cmd_run(const RunOptions& opt) {
  json scenario_json = json::parse(slurp(opt.scenario));
  ScenarioConfig cfg = parse_scenario(scenario_json);
  auto diags = validate(cfg);
  if (has_errors(diags)) {
    for (const auto& d : diags)
      if (d.severity == Diagnostic::Severity::Error)
        std::cerr << "error: " << d.message << "\n";
    return 1;
  }
  WorldState world = instantiate(cfg);

  SessionConfig sc;
  sc.mode = opt.mode == "simulation" ? SessionMode::Simulation
                                     : SessionMode::TaskSolving;
  sc.duration = opt.duration;
  sc.seed = opt.seed ? opt.seed : cfg.settings.seed;
  sc.reminder = !opt.no_tp;
  sc.semantic_and_progress = !opt.no_st;

  GoalSpec goals;
  bool have_goals = !opt.goals.empty();
  if (sc.mode == SessionMode::TaskSolving && !have_goals) {
    std::cerr << "error: task-solving mode requires --goals\n";
    return 2;
  }
  if (sc.mode == SessionMode::Simulation && have_goals) {
    std::cerr << "error: --goals conflicts with simulation mode\n";
    return 2;
  }
  if (have_goals) goals = goal_from_json(json::parse(slurp(opt.goals)));

  std::unique_ptr<Policy> policy;
  if (opt.policy == "random") {
    policy = std::make_unique<RandomPolicy>(sc.seed);
  } else if (opt.policy == "scripted") {
    if (opt.playbook.empty()) {
      std::cerr << "error: --policy scripted requires --playbook\n";
      return 2;
    }
    policy = std::make_unique<ScriptedPolicy>(
        playbook_from_json(json::parse(slurp(opt.playbook))));
  } else if (opt.policy == "needs_greedy") {
    policy = std::make_unique<NeedsGreedyPolicy>(opt.preference);
  } else if (opt.policy == "generation") {
    GenerationPolicyConfig gc;
    gc.model = opt.model;
    gc.temperature = opt.temperature;
    GenerationTransport transport;
    if (!opt.recorded.empty()) {
      transport = RecordedTransport::from_json(json::parse(slurp(opt.recorded)));
    } else if (!opt.model_endpoint.empty()) {
      transport = make_http_transport({.endpoint = opt.model_endpoint});
    } else {
      std::cerr << "error: --policy generation requires --model-endpoint or "
                   "--recorded\n";
      return 2;
    }
    policy = std::make_unique<GenerationPolicy>(std::move(transport), gc);
  } else {
    std::cerr << "error: unknown policy " << opt.policy << "\n";
    return 2;
  }

  SessionResult result;
  try {
    result = run_session(std::move(world), have_goals ? &goals : nullptr,
                         *policy, sc);
  } catch (const std::exception& e) {
    std::cerr << "error: session aborted: " << e.what() << "\n";
    return 1;
  }

  if (!opt.out_dir.empty())
    write_session_outputs(opt.out_dir, result, sc, &scenario_json);

  std::cout << "ticks: " << result.ticks_run << "\n";
  if (result.score)
    std::cout << score_report_json(*result.score).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"indoor multi-agent simulation engine"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "run a session");
  run->add_option("--scenario", ro.scenario, "scenario JSON")->required();
  run->add_option("--goals", ro.goals, "goal spec JSON (task-solving mode)");
  run->add_option("--mode", ro.mode, "task-solving | simulation")
      ->check(CLI::IsMember({"task-solving", "simulation"}));
  run->add_option("--policy", ro.policy,
                  "generation | scripted | random | needs_greedy");
  run->add_option("--playbook", ro.playbook, "playbook JSON for scripted policy");
  run->add_option("--recorded", ro.recorded,
                  "recorded generation responses (fixture mode)");
  run->add_option("--model-endpoint", ro.model_endpoint, "generation service URL");
  run->add_option("--model", ro.model, "model id");
  run->add_option("--temperature", ro.temperature, "sampling temperature");
  run->add_option("--seed", ro.seed, "session seed (overrides scenario)");
  run->add_option("--duration-min", ro.duration, "duration in simulated minutes");
  run->add_flag("--no-tp", ro.no_tp, "disable task-prioritization reminders");
  run->add_flag("--no-st", ro.no_st, "disable semantic-map/task-progress digest");
  run->add_option("--preference", ro.preference,
                  "needs_greedy beverage preference (water|coffee)");
  run->add_option("--out", ro.out_dir, "output directory");

  std::string scenario_path;
  auto* val = app.add_subcommand("validate", "lint a scenario file");
  val->add_option("scenario", scenario_path, "scenario JSON")->required();

  std::string snapshot_path, goals_path;
  auto* score_cmd = app.add_subcommand("score", "score a snapshot against goals");
  score_cmd->add_option("--snapshot", snapshot_path, "world snapshot JSON")->required();
  score_cmd->add_option("--goals", goals_path, "goal spec JSON")->required();

  std::string log_path, kind = "occupancy", format = "csv";
  auto* rep = app.add_subcommand("report", "analytics over an event log");
  rep->add_option("--log", log_path, "events.jsonl")->required();
  rep->add_option("--kind", kind,
                  "occupancy | activity | wellbeing | resource-stress");
  rep->add_option("--format", format, "csv | json");

  auto* actions = app.add_subcommand("actions", "dump the action catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(ro);
    if (val->parsed()) return cmd_validate(scenario_path);
    if (score_cmd->parsed()) return cmd_score(snapshot_path, goals_path);
    if (rep->parsed()) return cmd_report(log_path, kind, format);
    if (actions->parsed()) {
      std::cout << catalog_json().dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
