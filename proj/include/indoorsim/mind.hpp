#pragma once

// Agent cognition: perception, memory, task prioritization, planning, and
// the prompt/context assembly consumed by decision policies. Each agent's
// mind is independent state; all functions here read immutable snapshots.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "indoorsim/engine.hpp"
#include "indoorsim/goals.hpp"
#include "indoorsim/world.hpp"

namespace indoorsim {

struct ObservedEntity {
  std::string name;
  std::string otype;
  std::string receptacle;
  json state;
};

struct ObservedAgent {
  std::string name;
  std::string role;
  std::string last_action;
  int last_action_tick = -1;
};

struct ObservedSession {
  std::string id;
  std::vector<std::string> participants;
};

// Deterministic projection of the world onto one agent: local visible
// entities only (closed-receptacle contents excluded), plus own needs and
// inventory.
struct Observation {
  int tick = 0;
  std::string location;
  std::vector<ObservedEntity> entities;
  std::vector<ObservedAgent> agents;
  std::vector<ObservedSession> sessions;
  NeedsState needs;
  std::vector<std::string> inventory;
};

inline Observation perceive(const WorldState& w, const std::string& agent_name) {
  const auto* a = w.find_agent(agent_name);
  if (!a) throw std::out_of_range("perceive: unknown agent " + agent_name);
  Observation obs;
  obs.tick = w.tick;
  obs.location = a->location;
  obs.needs = a->needs;
  obs.inventory = a->inventory;
  for (const auto& n : w.locations.at(a->location).entities) {
    const auto& e = w.entities.at(n);
    if (!w.visible_to(*a, e)) continue;
    obs.entities.push_back(ObservedEntity{e.name, e.otype, e.receptacle, e.state});
  }
  for (const auto& n : a->inventory) {
    const auto& e = w.entities.at(n);
    obs.entities.push_back(ObservedEntity{e.name, e.otype, "", e.state});
  }
  for (const auto& peer : w.locations.at(a->location).agents) {
    if (peer == agent_name) continue;
    const auto& p = w.agents.at(peer);
    obs.agents.push_back(ObservedAgent{p.name, p.role, p.last_action,
                                       p.last_action_tick});
  }
  for (const auto& [id, s] : w.conversations)
    if (s.location == a->location)
      obs.sessions.push_back(ObservedSession{id, s.participants});
  return obs;
}

struct SemanticEntry {
  std::string otype;
  std::string location;
  std::string receptacle;
  json state;
  int tick = -1;
};

struct EpisodicEvent {
  int tick = 0;
  std::string text;
};

struct TaskProgressEntry {
  std::string task_id;
  int condition_index = 0;
  bool satisfied = false;
  int evidence_tick = -1;
};

struct MemoryStore {
  static constexpr size_t kEpisodicCapacity = 200;  // ring buffer

  std::map<std::string, SemanticEntry> semantic_map;
  std::vector<TaskProgressEntry> task_progress;
  std::deque<EpisodicEvent> episodic;
  std::set<std::string> knowledge;
  NeedsState needs;
  std::vector<std::string> inventory;
  int tick = -1;

  void remember(int t, std::string text) {
    episodic.push_back(EpisodicEvent{t, std::move(text)});
    while (episodic.size() > kEpisodicCapacity) episodic.pop_front();
  }
};

namespace mind_detail {

// Re-evaluates goal conditions against what the agent believes, i.e. the
// semantic map, not the live world.
inline bool condition_believed_satisfied(const MemoryStore& mem,
                                         const GoalCondition& c,
                                         const std::vector<Booking>& known_bookings) {
  if (c.booking) {
    for (const auto& b : known_bookings)
      if (b.room == c.booking->room && b.event == c.booking->event &&
          b.start == c.booking->start && b.end == c.booking->end)
        return true;
    return false;
  }
  int full = 0;
  for (const auto& [name, entry] : mem.semantic_map) {
    if (!c.object_name.empty() ? name != c.object_name : entry.otype != c.otype)
      continue;
    bool all = true;
    for (const auto& [k, v] : c.desired.items()) {
      if (k == "location")
        all = all && entry.location == v.get<std::string>();
      else if (k == "receptacle")
        all = all && entry.receptacle == v.get<std::string>();
      else if (k == "receptacle_otype") {
        auto it = mem.semantic_map.find(entry.receptacle);
        all = all && !entry.receptacle.empty() &&
              it != mem.semantic_map.end() && it->second.otype == v.get<std::string>();
      } else if (k == "min_temperature") {
        double t = entry.state.value("temperature", 20.0);
        all = all && t >= v.get<double>();
      } else {
        all = all && entry.state.contains(k) && entry.state.at(k) == v;
      }
      if (!all) break;
    }
    if (all) full++;
  }
  return full >= c.count;
}

}  // namespace mind_detail

// Semantic-map upsert with newer ticks; stale entries stay until
// contradicted. Goal conditions re-evaluated against the updated map.
inline void update_memory(MemoryStore& mem, const Observation& obs,
                          const GoalSpec* goals,
                          const std::vector<Booking>& known_bookings = {}) {
  mem.tick = obs.tick;
  mem.needs = obs.needs;
  mem.inventory = obs.inventory;
  for (const auto& e : obs.entities) {
    auto& entry = mem.semantic_map[e.name];
    entry.otype = e.otype;
    entry.location = obs.location;
    entry.receptacle = e.receptacle;
    entry.state = e.state;
    entry.tick = obs.tick;
  }
  for (const auto& p : obs.agents)
    if (!p.last_action.empty() && p.last_action_tick >= 0)
      mem.remember(obs.tick, p.name + ": " + p.last_action);
  if (goals) {
    mem.task_progress.clear();
    for (const auto& task : goals->tasks) {
      for (size_t i = 0; i < task.conditions.size(); ++i) {
        TaskProgressEntry tp;
        tp.task_id = task.id;
        tp.condition_index = static_cast<int>(i);
        tp.satisfied = mind_detail::condition_believed_satisfied(
            mem, task.conditions[i], known_bookings);
        tp.evidence_tick = obs.tick;
        mem.task_progress.push_back(tp);
      }
    }
  }
}

inline bool task_believed_done(const MemoryStore& mem, const std::string& task_id) {
  bool any = false;
  for (const auto& tp : mem.task_progress) {
    if (tp.task_id != task_id) continue;
    any = true;
    if (!tp.satisfied) return false;
  }
  return any;
}

namespace mind_detail {

// Which goal attributes a held object still lacks, phrased for the reminder.
inline std::vector<std::string> unmet_attributes_for(const MemoryStore& mem,
                                                     const std::string& obj,
                                                     const GoalCondition& c) {
  std::vector<std::string> missing;
  auto it = mem.semantic_map.find(obj);
  if (it == mem.semantic_map.end()) return missing;
  const auto& entry = it->second;
  for (const auto& [k, v] : c.desired.items()) {
    bool ok = true;
    if (k == "location")
      ok = entry.location == v.get<std::string>();
    else if (k == "receptacle")
      ok = entry.receptacle == v.get<std::string>();
    else if (k == "receptacle_otype") {
      auto rit = mem.semantic_map.find(entry.receptacle);
      ok = !entry.receptacle.empty() && rit != mem.semantic_map.end() &&
           rit->second.otype == v.get<std::string>();
    } else if (k == "min_temperature")
      ok = entry.state.value("temperature", 20.0) >= v.get<double>();
    else
      ok = entry.state.contains(k) && entry.state.at(k) == v;
    if (!ok) {
      if (k == "contains")
        missing.push_back("missing " + v.get<std::string>());
      else if (k == "location")
        missing.push_back("should be at " + v.get<std::string>());
      else if (k == "receptacle" || k == "receptacle_otype")
        missing.push_back("should be placed on a " + v.get<std::string>());
      else
        missing.push_back(k + " should be " + v.dump());
    }
  }
  return missing;
}

inline bool role_aligned(const GoalTask& task, const AgentState& profile) {
  // Rough alignment between a task's verbs and the role's skills.
  for (const auto& c : task.conditions) {
    if (c.booking && profile.skills.contains("book_meeting_room")) return true;
    if (c.desired.contains("is_clean") && profile.skills.contains("clean")) return true;
    if (c.desired.contains("is_working") &&
        profile.skills.contains("repair_computer"))
      return true;
  }
  return false;
}

}  // namespace mind_detail

// Task-prioritization reminder. Only restates memory content; introduces no
// new world facts. Held objects relevant to an unfinished task get their
// unmet goal attributes enumerated; with no relevant held object, lists all
// unfinished tasks and suggests role-aligned ones.
inline std::string prioritize(const MemoryStore& mem, const AgentState& profile,
                              const GoalSpec& goals) {
  std::ostringstream out;
  bool held_relevant = false;
  for (const auto& obj : mem.inventory) {
    auto it = mem.semantic_map.find(obj);
    if (it == mem.semantic_map.end()) continue;
    for (const auto& task : goals.tasks) {
      if (task_believed_done(mem, task.id)) continue;
      for (const auto& c : task.conditions) {
        if (c.booking) continue;
        if (!c.object_name.empty() ? c.object_name != obj
                                   : c.otype != it->second.otype)
          continue;
        auto missing = mind_detail::unmet_attributes_for(mem, obj, c);
        if (missing.empty()) continue;
        held_relevant = true;
        out << "You are holding " << obj << " (" << task.id << "):";
        for (const auto& m : missing) out << " " << m << ";";
        out << "\n";
      }
    }
  }
  if (held_relevant) return out.str();

  std::vector<const GoalTask*> unfinished;
  for (const auto& task : goals.tasks)
    if (!task_believed_done(mem, task.id)) unfinished.push_back(&task);
  if (unfinished.empty()) return "";
  out << "Unfinished tasks:";
  for (const auto* t : unfinished) out << " " << t->id;
  out << ".";
  for (const auto* t : unfinished)
    if (mind_detail::role_aligned(*t, profile)) {
      out << " As a " << profile.role << ", consider working on " << t->id << ".";
      break;
    }
  out << "\n";
  return out.str();
}

struct Objective {
  enum class Kind { Need, Task, Idle };
  Kind kind = Kind::Idle;
  std::string need;     // when Kind::Need
  std::string task_id;  // when Kind::Task
};

// One objective: the most urgent unmet need, else an unfinished task
// matching role skills (else the first unfinished task), else idle/social.
// Need tie-break order is fixed: hydration, fullness, bladder, energy,
// social.
inline Objective plan(const MemoryStore& mem, const AgentState& profile,
                      const GoalSpec* goals, const NeedsModel& model) {
  Objective o;
  const auto& n = mem.needs;
  if (n.hydration < model.unmet_threshold) {
    o.kind = Objective::Kind::Need;
    o.need = "hydration";
    return o;
  }
  if (n.fullness < model.unmet_threshold) {
    o.kind = Objective::Kind::Need;
    o.need = "fullness";
    return o;
  }
  if (n.bladder > model.bladder_threshold) {
    o.kind = Objective::Kind::Need;
    o.need = "bladder";
    return o;
  }
  if (n.energy < model.unmet_threshold) {
    o.kind = Objective::Kind::Need;
    o.need = "energy";
    return o;
  }
  if (n.social_fulfillment < model.unmet_threshold) {
    o.kind = Objective::Kind::Need;
    o.need = "social";
    return o;
  }
  if (goals) {
    const GoalTask* fallback = nullptr;
    for (const auto& task : goals->tasks) {
      if (task_believed_done(mem, task.id)) continue;
      if (!fallback) fallback = &task;
      if (mind_detail::role_aligned(task, profile)) {
        o.kind = Objective::Kind::Task;
        o.task_id = task.id;
        return o;
      }
    }
    if (fallback) {
      o.kind = Objective::Kind::Task;
      o.task_id = fallback->id;
      return o;
    }
  }
  return o;  // idle/social
}

// Everything a decision policy may see for one turn.
struct PolicyContext {
  std::string agent;
  const AgentState* profile = nullptr;
  Observation observation;
  const MemoryStore* memory = nullptr;
  std::vector<std::string> admissible;
  const GoalSpec* goals = nullptr;
  std::string reminder;
  bool semantic_and_progress_enabled = true;  // --no-st clears this
  int memory_window_ticks = 30;
  size_t prompt_budget_chars = 12000;
};

namespace mind_detail {

inline void append_trimmed(std::ostringstream& out, const std::string& section,
                           size_t budget) {
  std::string s = section;
  if (s.size() > budget) s.resize(budget);
  out << s;
}

}  // namespace mind_detail

// The generation-policy prompt: persona/role/skills/knowledge, observation,
// memory digest (semantic entries touched within the window + all task
// progress), the prioritization reminder, then the admissible commands as a
// numbered list with a fixed REASON/ACTION output instruction.
inline std::vector<std::pair<std::string, std::string>> build_prompt(
    const PolicyContext& ctx) {
  std::ostringstream sys;
  const auto& p = *ctx.profile;
  sys << "You are " << p.name << ", a " << p.role << ".\n";
  if (!p.internal_profile.empty()) sys << p.internal_profile << "\n";
  sys << "Skills:";
  for (const auto& [k, v] : p.skills) sys << " " << k;
  sys << "\nKnowledge:";
  if (p.knowledge.empty()) sys << " none";
  for (const auto& k : p.knowledge) sys << " " << k;
  sys << "\n";
  if (ctx.goals) {
    sys << "Shared tasks:\n";
    for (const auto& t : ctx.goals->tasks)
      sys << "  " << t.id << ": " << t.description << "\n";
  }

  std::ostringstream user;
  user << "Tick " << ctx.observation.tick << ", location " << ctx.observation.location
       << ".\n";
  user << "You see:";
  for (const auto& e : ctx.observation.entities) {
    user << " " << e.name;
    if (!e.receptacle.empty()) user << "(on " << e.receptacle << ")";
  }
  if (ctx.observation.entities.empty()) user << " nothing";
  user << "\nAgents here:";
  for (const auto& a : ctx.observation.agents) user << " " << a.name << "(" << a.role << ")";
  if (ctx.observation.agents.empty()) user << " none";
  user << "\nInventory:";
  for (const auto& n : ctx.observation.inventory) user << " " << n;
  if (ctx.observation.inventory.empty()) user << " empty";
  user << "\nNeeds: fullness " << ctx.observation.needs.fullness << ", hydration "
       << ctx.observation.needs.hydration << ", energy " << ctx.observation.needs.energy
       << ", social " << ctx.observation.needs.social_fulfillment << ", bladder "
       << ctx.observation.needs.bladder << "\n";

  if (ctx.semantic_and_progress_enabled && ctx.memory) {
    user << "Memory digest:\n";
    for (const auto& [name, entry] : ctx.memory->semantic_map) {
      if (ctx.memory->tick - entry.tick > ctx.memory_window_ticks) continue;
      user << "  " << name << " at " << entry.location;
      if (!entry.receptacle.empty()) user << " on " << entry.receptacle;
      user << " (tick " << entry.tick << ")\n";
    }
    if (!ctx.memory->task_progress.empty()) {
      user << "Task progress:\n";
      for (const auto& tp : ctx.memory->task_progress)
        user << "  " << tp.task_id << "[" << tp.condition_index << "]: "
             << (tp.satisfied ? "done" : "pending") << "\n";
    }
  }
  if (!ctx.reminder.empty()) user << "Reminder: " << ctx.reminder;
  user << "Admissible actions:\n";
  int i = 1;
  for (const auto& c : ctx.admissible) user << "  " << i++ << ". " << c << "\n";
  user << "Reply with 'REASON: <your reasoning> ACTION: <one admissible command>'."
       << " For chat actions you may append 'SAY: <utterance>'.\n";

  std::ostringstream trimmed_user;
  mind_detail::append_trimmed(trimmed_user, user.str(), ctx.prompt_budget_chars);
  return {{"system", sys.str()}, {"user", trimmed_user.str()}};
}

// Parses the ACTION line (and optional SAY payload) out of a model reply.
struct ParsedReply {
  std::string command;
  std::string utterance;
};

inline ParsedReply parse_reply(const std::string& text) {
  ParsedReply r;
  auto apos = text.rfind("ACTION:");
  if (apos == std::string::npos) return r;
  std::string rest = text.substr(apos + 7);
  auto spos = rest.find("SAY:");
  if (spos != std::string::npos) {
    r.utterance = rest.substr(spos + 4);
    rest = rest.substr(0, spos);
  }
  auto trim = [](std::string s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    auto e = s.find_last_not_of(ws);
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  r.command = trim(rest);
  r.utterance = trim(r.utterance);
  // keep only the first line of the command
  auto nl = r.command.find('\n');
  if (nl != std::string::npos) r.command = trim(r.command.substr(0, nl));
  return r;
}

}  // namespace indoorsim
