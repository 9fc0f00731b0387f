#pragma once

// Session runner: the per-tick loop tying needs dynamics, perception,
// memory, policies and the dispatcher together, plus the output bundle a
// session leaves on disk.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/analytics.hpp"
#include "indoorsim/engine.hpp"
#include "indoorsim/events.hpp"
#include "indoorsim/goals.hpp"
#include "indoorsim/mind.hpp"
#include "indoorsim/policy.hpp"
#include "indoorsim/world.hpp"

namespace indoorsim {

enum class SessionMode { TaskSolving, Simulation };

struct SessionConfig {
  SessionMode mode = SessionMode::TaskSolving;
  int duration = -1;  // -1: mode default (60 task-solving, 480 simulation)
  std::uint64_t seed = 0;
  bool semantic_and_progress = true;  // --no-st clears this
  bool reminder = true;               // --no-tp clears this
  int memory_window_ticks = 30;

  int effective_duration() const {
    if (duration > 0) return duration;
    return mode == SessionMode::TaskSolving ? 60 : 480;
  }
};

inline json session_config_json(const SessionConfig& c) {
  json j = json::object();
  j["mode"] = c.mode == SessionMode::TaskSolving ? "task-solving" : "simulation";
  j["duration"] = c.effective_duration();
  j["seed"] = c.seed;
  j["semantic_and_progress"] = c.semantic_and_progress;
  j["reminder"] = c.reminder;
  return j;
}

struct SessionResult {
  WorldState world;
  std::vector<EventRecord> events;
  std::optional<ScoreReport> score;
  int ticks_run = 0;
  bool goals_completed = false;
};

namespace runner_detail {

inline std::vector<std::string> command_args(const std::string& command) {
  auto tokens = tokenize(command);
  if (!tokens.empty()) tokens.erase(tokens.begin());
  return tokens;
}

// Captured before dispatch so the outcome event can say what was drunk.
inline json outcome_detail(const WorldState& w, const std::string& command) {
  auto tokens = tokenize(command);
  json detail = json::object();
  if (tokens.size() == 2 && tokens[0] == "drink") {
    const auto* e = w.find_entity(tokens[1]);
    if (e) detail["beverage"] = e->state.value("contains", std::string());
  }
  return detail;
}

}  // namespace runner_detail

inline SessionResult run_session(WorldState world, const GoalSpec* goals,
                                 Policy& policy, const SessionConfig& cfg) {
  SessionResult result;
  const int duration = cfg.effective_duration();
  std::map<std::string, int> busy_until;
  std::map<std::string, MemoryStore> memories;
  const bool task_mode = cfg.mode == SessionMode::TaskSolving;

  int t = 0;
  for (; t < duration; ++t) {
    world.tick = t;
    for (const auto& name : world.agent_order)
      world.agents.at(name).needs =
          tick_decay(world.agents.at(name).needs, world.needs_model, 1);

    // Decisions are made against an immutable snapshot so agent order
    // cannot leak information within a tick.
    const WorldState snapshot = world;
    std::vector<std::pair<std::string, Decision>> decisions;
    for (const auto& name : snapshot.agent_order) {
      if (busy_until[name] > t) continue;
      PolicyContext ctx;
      ctx.agent = name;
      ctx.profile = &snapshot.agents.at(name);
      ctx.observation = perceive(snapshot, name);
      auto& mem = memories[name];
      update_memory(mem, ctx.observation, task_mode ? goals : nullptr,
                    snapshot.bookings);
      ctx.memory = &mem;
      ctx.admissible = admissible_actions(snapshot, name);
      ctx.goals = task_mode ? goals : nullptr;
      ctx.semantic_and_progress_enabled = cfg.semantic_and_progress;
      ctx.memory_window_ticks = cfg.memory_window_ticks;
      if (task_mode && cfg.reminder && goals)
        ctx.reminder = prioritize(mem, snapshot.agents.at(name), *goals);
      decisions.emplace_back(name, policy.decide(snapshot, ctx));
    }

    for (const auto& [name, d] : decisions) {
      json detail = runner_detail::outcome_detail(world, d.command);
      auto tokens = tokenize(d.command);
      EventRecord action;
      action.tick = t;
      action.agent = name;
      action.kind = "action";
      action.verb = tokens.empty() ? "wait" : tokens[0];
      action.args = runner_detail::command_args(d.command);
      action.command = d.command;
      action.location = world.agents.at(name).location;
      result.events.push_back(action);

      auto out = dispatch(world, name, d.command, d.utterance);
      policy.notify(name, d.command, out.success);
      auto& agent = world.agents.at(name);
      agent.last_action = d.command;
      agent.last_action_tick = t;
      busy_until[name] = t + std::max(1, out.duration_ticks);

      EventRecord outcome = action;
      outcome.kind = "outcome";
      outcome.success = out.success;
      outcome.message = out.message;
      outcome.duration = std::max(1, out.duration_ticks);
      outcome.location = agent.location;
      if (out.success) outcome.detail = detail;
      result.events.push_back(outcome);

      if (out.success && !d.utterance.empty()) {
        EventRecord utter = action;
        utter.kind = "utterance";
        utter.message = d.utterance;
        utter.location = agent.location;
        result.events.push_back(utter);
      }
    }

    for (const auto& name : world.agent_order) {
      const auto& a = world.agents.at(name);
      EventRecord sample;
      sample.tick = t;
      sample.agent = name;
      sample.kind = "needs-sample";
      sample.location = a.location;
      sample.needs = json{{"fullness", a.needs.fullness},
                          {"hydration", a.needs.hydration},
                          {"energy", a.needs.energy},
                          {"social_fulfillment", a.needs.social_fulfillment},
                          {"bladder", a.needs.bladder}};
      sample.unmet = json::array();
      for (const auto& n : unmet_needs(a.needs, world.needs_model))
        sample.unmet.push_back(n);
      result.events.push_back(sample);
    }

    if (task_mode && goals && goals_complete(world, *goals)) {
      result.goals_completed = true;
      ++t;
      break;
    }
  }

  result.ticks_run = t;
  world.tick = t;
  if (task_mode && goals) result.score = score(world, *goals);
  result.world = std::move(world);
  return result;
}

// Writes the standard session bundle into `dir`.
inline void write_session_outputs(const std::filesystem::path& dir,
                                  const SessionResult& result,
                                  const SessionConfig& cfg,
                                  const json* scenario_copy = nullptr) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto dump = [&](const fs::path& name, const std::string& text) {
    std::ofstream out(dir / name);
    out << text;
  };
  dump("config.json", session_config_json(cfg).dump(2) + "\n");
  if (scenario_copy) dump("scenario.json", scenario_copy->dump(2) + "\n");
  dump("events.jsonl", events_to_jsonl(result.events));
  dump("final_state.json", snapshot(result.world).dump(2) + "\n");
  if (result.score)
    dump("score.json", score_report_json(*result.score).dump(2) + "\n");
  if (result.ticks_run > 0) {
    dump("occupancy.csv", occupancy_csv(occupancy_report(result.events)));
    dump("activity.csv", activity_csv(activity_report(result.events)));
    dump("wellbeing.json",
         wellbeing_json(wellbeing_report(result.events)).dump(2) + "\n");
    dump("resource_stress.json",
         resource_stress_json(resource_stress_report(result.events)).dump(2) + "\n");
  }
}

// Convenience umbrella include check.
inline constexpr int kRunnerHeaderVersion = 1;

}  // namespace indoorsim
