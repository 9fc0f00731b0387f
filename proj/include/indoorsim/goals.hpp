#pragma once

// Goal specifications and instance-level (IS) / attribute-level (AS)
// task-completion scoring.
//
// Assignment semantics: each condition is scored independently; within a
// condition the k required objects are chosen greedily, fully-satisfying
// objects first, then by satisfied-attribute count, then by name. For
// top-k selection over per-object scores this equals the exhaustive
// optimum (the acceptance suite cross-checks against a brute-force oracle).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/world.hpp"

namespace indoorsim {

struct BookingRequirement {
  std::string room;
  std::string event;
  std::string start;
  std::string end;
};

struct GoalCondition {
  // object selector: by type (otype + count) or by explicit name (count 1)
  std::string otype;
  std::string object_name;
  int count = 1;
  json desired = json::object();  // attribute -> desired value; special keys:
                                  // location, receptacle, receptacle_otype,
                                  // min_temperature
  std::optional<BookingRequirement> booking;
};

struct GoalTask {
  std::string id;
  std::string description;
  std::vector<GoalCondition> conditions;
};

struct GoalSpec {
  std::vector<GoalTask> tasks;
};

struct ConditionScore {
  int required = 0;         // k objects (1 for a booking)
  int attrs_per_object = 0;
  int fully_satisfied = 0;
  int attrs_satisfied = 0;
  double instance_fraction = 0.0;
  double attribute_fraction = 0.0;
};

struct TaskScore {
  std::string id;
  std::vector<ConditionScore> conditions;
  double instance = 0.0;   // mean over conditions
  double attribute = 0.0;  // mean over conditions
};

struct ScoreReport {
  std::vector<TaskScore> tasks;
  double instance_avg = 0.0;
  double attribute_avg = 0.0;
};

namespace goals_detail {

inline bool attribute_satisfied(const WorldState& w, const ObjectEntity& e,
                                const std::string& key, const json& want) {
  if (key == "location") return e.location == want.get<std::string>();
  if (key == "receptacle") return e.receptacle == want.get<std::string>();
  if (key == "receptacle_otype") {
    if (e.receptacle.empty()) return false;
    const auto* r = w.find_entity(e.receptacle);
    return r && r->otype == want.get<std::string>();
  }
  if (key == "min_temperature") return e.temperature() >= want.get<double>();
  auto it = e.state.find(key);
  if (it == e.state.end()) return false;
  return *it == want;
}

struct CandidateScore {
  std::string name;
  int satisfied = 0;
  bool full = false;
};

inline std::vector<CandidateScore> score_candidates(const WorldState& w,
                                                    const GoalCondition& c) {
  std::vector<CandidateScore> out;
  const int nattrs = static_cast<int>(c.desired.size());
  for (const auto& [name, e] : w.entities) {
    if (!c.object_name.empty() && name != c.object_name) continue;
    if (c.object_name.empty() && e.otype != c.otype) continue;
    CandidateScore cs;
    cs.name = name;
    for (const auto& [k, v] : c.desired.items())
      if (attribute_satisfied(w, e, k, v)) cs.satisfied++;
    cs.full = cs.satisfied == nattrs;
    out.push_back(cs);
  }
  return out;
}

inline ConditionScore score_booking(const WorldState& w, const GoalCondition& c) {
  const auto& req = *c.booking;
  ConditionScore s;
  s.required = 1;
  s.attrs_per_object = 3;  // event name, start, end
  int best = 0;
  for (const auto& b : w.bookings) {
    if (b.room != req.room) continue;
    int sat = (b.event == req.event) + (b.start == req.start) + (b.end == req.end);
    best = std::max(best, sat);
  }
  s.attrs_satisfied = best;
  s.fully_satisfied = best == 3 ? 1 : 0;
  s.instance_fraction = s.fully_satisfied;
  s.attribute_fraction = best / 3.0;
  return s;
}

}  // namespace goals_detail

inline ConditionScore score_condition(const WorldState& w, const GoalCondition& c) {
  namespace gd = goals_detail;
  if (c.booking) return gd::score_booking(w, c);
  ConditionScore s;
  s.required = c.count;
  s.attrs_per_object = static_cast<int>(c.desired.size());
  auto cands = gd::score_candidates(w, c);
  std::sort(cands.begin(), cands.end(),
            [](const gd::CandidateScore& a, const gd::CandidateScore& b) {
              if (a.full != b.full) return a.full;
              if (a.satisfied != b.satisfied) return a.satisfied > b.satisfied;
              return a.name < b.name;
            });
  const int take = std::min<int>(c.count, static_cast<int>(cands.size()));
  for (int i = 0; i < take; ++i) {
    if (cands[i].full) s.fully_satisfied++;
    s.attrs_satisfied += cands[i].satisfied;
  }
  s.instance_fraction =
      c.count == 0 ? 1.0 : std::min(1.0, double(s.fully_satisfied) / c.count);
  const int total_attrs = c.count * s.attrs_per_object;
  s.attribute_fraction =
      total_attrs == 0 ? 1.0 : std::min(1.0, double(s.attrs_satisfied) / total_attrs);
  return s;
}

inline ScoreReport score(const WorldState& w, const GoalSpec& goal) {
  ScoreReport r;
  for (const auto& task : goal.tasks) {
    TaskScore ts;
    ts.id = task.id;
    double is_sum = 0, as_sum = 0;
    for (const auto& c : task.conditions) {
      auto cs = score_condition(w, c);
      is_sum += cs.instance_fraction;
      as_sum += cs.attribute_fraction;
      ts.conditions.push_back(cs);
    }
    const double n = std::max<size_t>(1, task.conditions.size());
    ts.instance = is_sum / n;
    ts.attribute = as_sum / n;
    r.tasks.push_back(std::move(ts));
  }
  double is_sum = 0, as_sum = 0;
  for (const auto& t : r.tasks) {
    is_sum += t.instance;
    as_sum += t.attribute;
  }
  const double n = std::max<size_t>(1, r.tasks.size());
  r.instance_avg = is_sum / n;
  r.attribute_avg = as_sum / n;
  return r;
}

inline double instance_score(const WorldState& w, const GoalSpec& g) {
  return score(w, g).instance_avg;
}
inline double attribute_score(const WorldState& w, const GoalSpec& g) {
  return score(w, g).attribute_avg;
}

inline bool goals_complete(const WorldState& w, const GoalSpec& g) {
  auto r = score(w, g);
  return r.instance_avg >= 1.0 && r.attribute_avg >= 1.0;
}

// Counts requiring more objects than the scenario provides are authoring
// mistakes; surface them before a session starts.
inline std::vector<std::string> validate_goal(const WorldState& w, const GoalSpec& g) {
  std::vector<std::string> problems;
  for (const auto& t : g.tasks) {
    for (const auto& c : t.conditions) {
      if (c.booking) continue;
      int available = 0;
      for (const auto& [name, e] : w.entities) {
        if (!c.object_name.empty() ? name == c.object_name : e.otype == c.otype)
          available++;
      }
      if (available < c.count)
        problems.push_back(t.id + ": requires " + std::to_string(c.count) + " x " +
                           (c.object_name.empty() ? c.otype : c.object_name) +
                           " but the scenario has " + std::to_string(available));
    }
  }
  return problems;
}

inline json goal_to_json(const GoalSpec& g) {
  json j = json::object();
  j["tasks"] = json::array();
  for (const auto& t : g.tasks) {
    json jt = json::object();
    jt["id"] = t.id;
    jt["description"] = t.description;
    jt["conditions"] = json::array();
    for (const auto& c : t.conditions) {
      json jc = json::object();
      if (c.booking) {
        jc["booking"] = json{{"room", c.booking->room},
                             {"event", c.booking->event},
                             {"start", c.booking->start},
                             {"end", c.booking->end}};
      } else {
        if (!c.object_name.empty())
          jc["name"] = c.object_name;
        else {
          jc["otype"] = c.otype;
          jc["count"] = c.count;
        }
        jc["desired"] = c.desired;
      }
      jt["conditions"].push_back(jc);
    }
    j["tasks"].push_back(jt);
  }
  return j;
}

inline GoalSpec goal_from_json(const json& j) {
  GoalSpec g;
  for (const auto& jt : j.at("tasks")) {
    GoalTask t;
    t.id = jt.at("id").get<std::string>();
    t.description = jt.value("description", std::string());
    for (const auto& jc : jt.at("conditions")) {
      GoalCondition c;
      if (jc.contains("booking")) {
        const auto& b = jc.at("booking");
        c.booking = BookingRequirement{b.at("room"), b.at("event"), b.at("start"),
                                       b.at("end")};
      } else {
        c.object_name = jc.value("name", std::string());
        c.otype = jc.value("otype", std::string());
        c.count = jc.value("count", 1);
        c.desired = jc.value("desired", json::object());
      }
      t.conditions.push_back(std::move(c));
    }
    g.tasks.push_back(std::move(t));
  }
  return g;
}

// The bundled office-event benchmark: five tasks over the office_event
// scenario fixture.
inline GoalSpec office_event_goals() {
  auto obj = [](std::string otype, int count, json desired) {
    GoalCondition c;
    c.otype = std::move(otype);
    c.count = count;
    c.desired = std::move(desired);
    return c;
  };
  GoalSpec g;
  g.tasks.push_back(GoalTask{
      "T1",
      "Prepare enough tables and chairs in the event area: move 2 tables and "
      "2 chairs to the open area 1.",
      {obj("Table", 2, {{"location", "open_area_1"}}),
       obj("Chair", 2, {{"location", "open_area_1"}})}});
  g.tasks.push_back(GoalTask{
      "T2",
      "Prepare clean utensils for the event: 4 clean plates, 4 clean knives "
      "and 4 clean forks on the tables in the open area 1.",
      {obj("Plate", 4,
           {{"is_clean", true}, {"location", "open_area_1"}, {"receptacle_otype", "Table"}}),
       obj("Knife", 4,
           {{"is_clean", true}, {"location", "open_area_1"}, {"receptacle_otype", "Table"}}),
       obj("Fork", 4,
           {{"is_clean", true}, {"location", "open_area_1"}, {"receptacle_otype", "Table"}})}});
  g.tasks.push_back(GoalTask{
      "T3",
      "Move a podium to the open area 1; put one computer, one projector and "
      "one microphone on the podium, all in working condition.",
      {obj("Podium", 1, {{"location", "open_area_1"}}),
       obj("Computer", 1,
           {{"location", "open_area_1"}, {"receptacle_otype", "Podium"}, {"is_working", true}}),
       obj("Projector", 1,
           {{"location", "open_area_1"}, {"receptacle_otype", "Podium"}, {"is_working", true}}),
       obj("Microphone", 1,
           {{"location", "open_area_1"}, {"receptacle_otype", "Podium"}, {"is_working", true}})}});
  GoalCondition booking;
  booking.booking = BookingRequirement{"open_area_1", "Lunch and Listen",
                                       "2024-09-02T12:00:00", "2024-09-02T13:00:00"};
  g.tasks.push_back(GoalTask{
      "T4",
      "Book the open area 1 for the event: Lunch and Listen, "
      "2024-09-02T12:00:00 to 2024-09-02T13:00:00.",
      {booking}});
  g.tasks.push_back(GoalTask{
      "T5",
      "Prepare 3 cups of coffee and 3 cups of tea on the tables in the open "
      "area 1; bring 2 heated meals to the tables in the open area 1.",
      {obj("Cup", 3,
           {{"contains", "coffee"}, {"location", "open_area_1"}, {"receptacle_otype", "Table"}}),
       obj("Cup", 3,
           {{"contains", "tea"}, {"location", "open_area_1"}, {"receptacle_otype", "Table"}}),
       obj("Meal", 2,
           {{"location", "open_area_1"}, {"receptacle_otype", "Table"}, {"min_temperature", 60.0}})}});
  return g;
}

inline json score_report_json(const ScoreReport& r) {
  json j = json::object();
  j["tasks"] = json::array();
  for (const auto& t : r.tasks) {
    j["tasks"].push_back(json{{"id", t.id},
                              {"instance", t.instance * 100.0},
                              {"attribute", t.attribute * 100.0}});
  }
  j["instance_avg"] = r.instance_avg * 100.0;
  j["attribute_avg"] = r.attribute_avg * 100.0;
  return j;
}

}  // namespace indoorsim
