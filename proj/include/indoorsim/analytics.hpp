#pragma once

// Report generation over event logs: occupancy, activity-time distribution,
// well-being, suboptimal-state breakdown, and facility-stress figures.
// Pure functions of the log: same log, byte-identical report.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/catalog.hpp"
#include "indoorsim/events.hpp"

namespace indoorsim {

// go_to -> movement; chat verbs -> social; eat/drink/restroom/rest ->
// physiological; work_at_desk and role-gated verbs -> role-work;
// everything else (incl. idle ticks) -> other.
inline std::string activity_category(const std::string& verb) {
  if (verb == "go_to" || verb == "move_furniture") return "movement";
  if (verb == "initiating_chat" || verb == "stay_chat" || verb == "end_chat" ||
      verb == "join_chat")
    return "social";
  if (verb == "eat" || verb == "drink" || verb == "use_restroom" || verb == "rest")
    return "physiological";
  const auto* spec = find_action(verb);
  if (spec && (verb == "work_at_desk" || !spec->role_gate.empty())) return "role-work";
  return "other";
}

inline const std::vector<std::string>& activity_categories() {
  static const std::vector<std::string> cats = {"role-work", "movement", "social",
                                                "physiological", "other"};
  return cats;
}

struct OccupancyReport {
  // agent -> location -> fraction of session time
  std::map<std::string, std::map<std::string, double>> fractions;
  int total_ticks = 0;
};

struct ActivityReport {
  std::map<std::string, std::map<std::string, double>> fractions;  // agent -> cat
  int total_ticks = 0;
};

struct WellbeingReport {
  std::map<std::string, double> optimal_fraction;  // per agent
  double aggregate_optimal = 0.0;
  std::map<std::string, int> suboptimal_ticks_by_need;  // double-counts shared ticks
  int total_ticks = 0;
};

struct ResourceStressReport {
  int water_drinkers = 0;
  int coffee_drinkers = 0;
  int completion_tick = -1;  // -1 = incomplete
  std::map<std::string, int> first_drink_tick;  // -1 for agents who never drank
};

namespace analytics_detail {

inline std::set<std::string> agents_in(const std::vector<EventRecord>& events) {
  std::set<std::string> out;
  for (const auto& e : events) out.insert(e.agent);
  return out;
}

inline int session_ticks(const std::vector<EventRecord>& events) {
  int max_tick = -1;
  for (const auto& e : events)
    if (e.kind == "needs-sample") max_tick = std::max(max_tick, e.tick);
  return max_tick + 1;
}

}  // namespace analytics_detail

// Tick-weighted location residency from the per-tick needs samples; the
// location field already points at the travel destination while en route.
inline OccupancyReport occupancy_report(const std::vector<EventRecord>& events) {
  OccupancyReport r;
  r.total_ticks = analytics_detail::session_ticks(events);
  if (r.total_ticks <= 0)
    throw std::runtime_error("occupancy_report: log has no needs samples");
  std::map<std::string, std::map<std::string, int>> ticks;
  std::map<std::string, int> seen;
  for (const auto& e : events) {
    if (e.kind != "needs-sample") continue;
    ticks[e.agent][e.location]++;
    seen[e.agent]++;
  }
  for (const auto& [agent, n] : seen)
    if (n != r.total_ticks)
      throw std::runtime_error("occupancy_report: truncated log for agent " + agent);
  for (const auto& [agent, by_loc] : ticks)
    for (const auto& [loc, n] : by_loc)
      r.fractions[agent][loc] = double(n) / r.total_ticks;
  return r;
}

inline ActivityReport activity_report(const std::vector<EventRecord>& events) {
  ActivityReport r;
  r.total_ticks = analytics_detail::session_ticks(events);
  if (r.total_ticks <= 0)
    throw std::runtime_error("activity_report: log has no needs samples");
  // Every agent-tick gets exactly one category; successful actions cover
  // [tick, tick+duration), uncovered ticks are "other".
  std::map<std::string, std::vector<std::string>> timeline;
  for (const auto& agent : analytics_detail::agents_in(events))
    timeline[agent] = std::vector<std::string>(r.total_ticks, "other");
  for (const auto& e : events) {
    if (e.kind != "outcome" || !e.success) continue;
    const std::string cat = activity_category(e.verb);
    for (int t = e.tick; t < e.tick + e.duration && t < r.total_ticks; ++t)
      timeline[e.agent][t] = cat;
  }
  for (const auto& [agent, line] : timeline) {
    std::map<std::string, int> counts;
    for (const auto& c : line) counts[c]++;
    for (const auto& cat : activity_categories())
      r.fractions[agent][cat] = double(counts[cat]) / r.total_ticks;
  }
  return r;
}

inline WellbeingReport wellbeing_report(const std::vector<EventRecord>& events) {
  WellbeingReport r;
  r.total_ticks = analytics_detail::session_ticks(events);
  if (r.total_ticks <= 0)
    throw std::runtime_error("wellbeing_report: log has no needs samples");
  std::map<std::string, int> optimal, samples;
  for (const auto& e : events) {
    if (e.kind != "needs-sample") continue;
    samples[e.agent]++;
    if (e.unmet.empty())
      optimal[e.agent]++;
    else
      for (const auto& need : e.unmet)
        r.suboptimal_ticks_by_need[need.get<std::string>()]++;
  }
  double sum = 0;
  for (const auto& [agent, n] : samples) {
    if (n != r.total_ticks)
      throw std::runtime_error("wellbeing_report: missing samples for agent " + agent);
    r.optimal_fraction[agent] = double(optimal[agent]) / n;
    sum += r.optimal_fraction[agent];
  }
  r.aggregate_optimal = samples.empty() ? 1.0 : sum / samples.size();
  return r;
}

// Table-3-shaped figures for a hydration scenario: X = agents whose first
// successful drink was water, Y = coffee, Z = tick of the last agent's
// first successful drink.
inline ResourceStressReport resource_stress_report(
    const std::vector<EventRecord>& events) {
  ResourceStressReport r;
  for (const auto& agent : analytics_detail::agents_in(events))
    r.first_drink_tick[agent] = -1;
  for (const auto& e : events) {
    if (e.kind != "outcome" || !e.success || e.verb != "drink") continue;
    auto& first = r.first_drink_tick[e.agent];
    if (first >= 0) continue;
    first = e.tick + e.duration;  // hydrated once the drink completes
    const std::string beverage = e.detail.value("beverage", std::string());
    if (beverage == "water") r.water_drinkers++;
    if (beverage == "coffee") r.coffee_drinkers++;
  }
  r.completion_tick = 0;
  for (const auto& [agent, t] : r.first_drink_tick) {
    if (t < 0) {
      r.completion_tick = -1;
      break;
    }
    r.completion_tick = std::max(r.completion_tick, t);
  }
  return r;
}

// --- serialization (JSON + CSV; column orders frozen, golden-file tested) ---

inline json occupancy_json(const OccupancyReport& r) {
  json j = json::object();
  j["total_ticks"] = r.total_ticks;
  j["fractions"] = json::object();
  for (const auto& [agent, by_loc] : r.fractions) {
    json ja = json::object();
    for (const auto& [loc, f] : by_loc) ja[loc] = f;
    j["fractions"][agent] = ja;
  }
  return j;
}

inline std::string occupancy_csv(const OccupancyReport& r) {
  std::set<std::string> locs;
  for (const auto& [agent, by_loc] : r.fractions)
    for (const auto& [loc, f] : by_loc) locs.insert(loc);
  std::ostringstream out;
  out << "agent";
  for (const auto& l : locs) out << "," << l;
  out << "\n";
  for (const auto& [agent, by_loc] : r.fractions) {
    out << agent;
    for (const auto& l : locs) {
      auto it = by_loc.find(l);
      out << "," << (it == by_loc.end() ? 0.0 : it->second);
    }
    out << "\n";
  }
  return out.str();
}

inline json activity_json(const ActivityReport& r) {
  json j = json::object();
  j["total_ticks"] = r.total_ticks;
  j["fractions"] = json::object();
  for (const auto& [agent, by_cat] : r.fractions) {
    json ja = json::object();
    for (const auto& cat : activity_categories()) ja[cat] = by_cat.at(cat);
    j["fractions"][agent] = ja;
  }
  return j;
}

inline std::string activity_csv(const ActivityReport& r) {
  std::ostringstream out;
  out << "agent";
  for (const auto& c : activity_categories()) out << "," << c;
  out << "\n";
  for (const auto& [agent, by_cat] : r.fractions) {
    out << agent;
    for (const auto& c : activity_categories()) out << "," << by_cat.at(c);
    out << "\n";
  }
  return out.str();
}

inline json wellbeing_json(const WellbeingReport& r) {
  json j = json::object();
  j["total_ticks"] = r.total_ticks;
  j["aggregate_optimal"] = r.aggregate_optimal;
  j["optimal_fraction"] = json::object();
  for (const auto& [agent, f] : r.optimal_fraction) j["optimal_fraction"][agent] = f;
  j["suboptimal_ticks_by_need"] = json::object();
  for (const auto& [need, n] : r.suboptimal_ticks_by_need)
    j["suboptimal_ticks_by_need"][need] = n;
  return j;
}

inline json resource_stress_json(const ResourceStressReport& r) {
  json j = json::object();
  j["water_drinkers"] = r.water_drinkers;
  j["coffee_drinkers"] = r.coffee_drinkers;
  if (r.completion_tick < 0)
    j["completion_minutes"] = "incomplete";
  else
    j["completion_minutes"] = r.completion_tick;
  j["first_drink_tick"] = json::object();
  for (const auto& [agent, t] : r.first_drink_tick) j["first_drink_tick"][agent] = t;
  return j;
}

}  // namespace indoorsim
