#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "indoorsim/analytics.hpp"
#include "indoorsim/needs.hpp"

using namespace indoorsim;

namespace {

EventRecord sample(int tick, const std::string& agent, const std::string& loc,
                   std::vector<std::string> unmet = {}) {
  EventRecord e;
  e.tick = tick;
  e.agent = agent;
  e.kind = "needs-sample";
  e.location = loc;
  e.needs = json::object();
  e.unmet = json(unmet);
  return e;
}

EventRecord outcome(int tick, const std::string& agent, const std::string& verb,
                    bool success, int duration, json detail = json()) {
  EventRecord e;
  e.tick = tick;
  e.agent = agent;
  e.kind = "outcome";
  e.verb = verb;
  e.command = verb;
  e.success = success;
  e.duration = duration;
  e.detail = std::move(detail);
  return e;
}

}  // namespace

TEST_CASE("activity categories partition the verb space") {
  CHECK(activity_category("go_to") == "movement");
  CHECK(activity_category("move_furniture") == "movement");
  CHECK(activity_category("initiating_chat") == "social");
  CHECK(activity_category("stay_chat") == "social");
  CHECK(activity_category("end_chat") == "social");
  CHECK(activity_category("join_chat") == "social");
  CHECK(activity_category("eat") == "physiological");
  CHECK(activity_category("drink") == "physiological");
  CHECK(activity_category("use_restroom") == "physiological");
  CHECK(activity_category("rest") == "physiological");
  CHECK(activity_category("work_at_desk") == "role-work");
  CHECK(activity_category("repair_computer") == "role-work");
  CHECK(activity_category("repair_projector") == "role-work");
  CHECK(activity_category("pick_up") == "other");
  CHECK(activity_category("look_around") == "other");
  CHECK(activity_category("wait") == "other");
  CHECK(activity_category("no_such_verb") == "other");
  CHECK(activity_categories().size() == 5);
}

TEST_CASE("occupancy report is tick-weighted residency") {
  std::vector<EventRecord> ev;
  for (int t = 0; t < 4; ++t) {
    ev.push_back(sample(t, "a", t < 3 ? "office" : "kitchen"));
    ev.push_back(sample(t, "b", "kitchen"));
  }
  auto r = occupancy_report(ev);
  CHECK(r.total_ticks == 4);
  CHECK(r.fractions.at("a").at("office") == doctest::Approx(0.75));
  CHECK(r.fractions.at("a").at("kitchen") == doctest::Approx(0.25));
  CHECK(r.fractions.at("b").at("kitchen") == doctest::Approx(1.0));
  CHECK(r.fractions.at("b").count("office") == 0);

  // Missing one sample for b -> truncated log, refuse to report.
  ev.pop_back();
  CHECK_THROWS_AS(occupancy_report(ev), std::runtime_error);
  CHECK_THROWS_AS(occupancy_report({}), std::runtime_error);
}

TEST_CASE("activity report covers successful actions for their duration") {
  std::vector<EventRecord> ev;
  for (int t = 0; t < 10; ++t) ev.push_back(sample(t, "a", "office"));
  // ticks 0-2: go_to (duration 3); tick 3: failed eat (ignored);
  // ticks 4-8: work_at_desk (duration 5); tick 9 uncovered -> other.
  ev.push_back(outcome(0, "a", "go_to", true, 3));
  ev.push_back(outcome(3, "a", "eat", false, 0));
  ev.push_back(outcome(4, "a", "work_at_desk", true, 5));
  auto r = activity_report(ev);
  CHECK(r.total_ticks == 10);
  const auto& fa = r.fractions.at("a");
  CHECK(fa.at("movement") == doctest::Approx(0.3));
  CHECK(fa.at("role-work") == doctest::Approx(0.5));
  CHECK(fa.at("physiological") == doctest::Approx(0.0));
  CHECK(fa.at("social") == doctest::Approx(0.0));
  CHECK(fa.at("other") == doctest::Approx(0.2));
  double sum = 0;
  for (const auto& c : activity_categories()) sum += fa.at(c);
  CHECK(sum == doctest::Approx(1.0));

  // An action running past the session end is clipped, not overflowed.
  std::vector<EventRecord> tail;
  for (int t = 0; t < 3; ++t) tail.push_back(sample(t, "a", "office"));
  tail.push_back(outcome(2, "a", "rest", true, 5));
  auto r2 = activity_report(tail);
  CHECK(r2.fractions.at("a").at("physiological") ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("wellbeing report measures optimal-needs fractions") {
  std::vector<EventRecord> ev;
  for (int t = 0; t < 4; ++t) {
    ev.push_back(sample(t, "a", "office", t == 3 ? std::vector<std::string>{"thirst"}
                                                 : std::vector<std::string>{}));
    ev.push_back(sample(t, "b", "office",
                        std::vector<std::string>{"thirst", "fatigue"}));
  }
  auto r = wellbeing_report(ev);
  CHECK(r.total_ticks == 4);
  CHECK(r.optimal_fraction.at("a") == doctest::Approx(0.75));
  CHECK(r.optimal_fraction.at("b") == doctest::Approx(0.0));
  CHECK(r.aggregate_optimal == doctest::Approx(0.375));
  CHECK(r.suboptimal_ticks_by_need.at("thirst") == 5);
  CHECK(r.suboptimal_ticks_by_need.at("fatigue") == 4);

  ev.pop_back();
  CHECK_THROWS_AS(wellbeing_report(ev), std::runtime_error);
}

TEST_CASE("wellbeing matches the closed-form decay prediction") {
  // An untreated agent starting at hydration h crosses the threshold u
  // after ceil((h - u) / rate) ticks of decay; every later sample is
  // suboptimal. Build the log from the needs model itself.
  NeedsModel m;
  NeedsState n;
  n.hydration = 40.0;
  const int total = 100;
  // first unmet sample index: decay applied before sampling each tick.
  int predicted = static_cast<int>(std::ceil((n.hydration - m.unmet_threshold) /
                                             m.hydration_decay));
  std::vector<EventRecord> ev;
  for (int t = 0; t < total; ++t) {
    n = tick_decay(n, m, 1);
    std::vector<std::string> unmet;
    for (const auto& u : unmet_needs(n, m)) unmet.push_back(u);
    ev.push_back(sample(t, "a", "office", unmet));
  }
  auto r = wellbeing_report(ev);
  CHECK(r.optimal_fraction.at("a") ==
        doctest::Approx(double(predicted) / total));
  CHECK(r.suboptimal_ticks_by_need.at("thirst") == total - predicted);
}

TEST_CASE("resource stress report counts first drinks and completion time") {
  std::vector<EventRecord> ev;
  for (int t = 0; t < 12; ++t) {
    ev.push_back(sample(t, "a", "kitchen"));
    ev.push_back(sample(t, "b", "kitchen"));
    ev.push_back(sample(t, "c", "office"));
  }
  ev.push_back(outcome(3, "a", "drink", true, 1, json{{"beverage", "water"}}));
  // A second drink never re-counts the agent.
  ev.push_back(outcome(8, "a", "drink", true, 1, json{{"beverage", "coffee"}}));
  ev.push_back(outcome(10, "b", "drink", true, 1, json{{"beverage", "coffee"}}));
  // A failed drink does not count.
  ev.push_back(outcome(2, "c", "drink", false, 0, json{{"beverage", "water"}}));

  auto r = resource_stress_report(ev);
  CHECK(r.water_drinkers == 1);
  CHECK(r.coffee_drinkers == 1);
  CHECK(r.first_drink_tick.at("a") == 4);
  CHECK(r.first_drink_tick.at("b") == 11);
  CHECK(r.first_drink_tick.at("c") == -1);
  CHECK(r.completion_tick == -1);  // c never drank

  // Once everyone drank, completion = the last first-drink completion.
  ev.push_back(outcome(5, "c", "drink", true, 1, json{{"beverage", "water"}}));
  auto r2 = resource_stress_report(ev);
  CHECK(r2.water_drinkers == 2);
  CHECK(r2.completion_tick == 11);
  auto j = resource_stress_json(r2);
  CHECK(j.at("completion_minutes") == 11);
  CHECK(resource_stress_json(r).at("completion_minutes") == "incomplete");
}

TEST_CASE("event logs round-trip through JSONL with a schema header") {
  std::vector<EventRecord> ev;
  ev.push_back(sample(0, "a", "office", {"thirst"}));
  ev.push_back(outcome(0, "a", "drink", true, 1, json{{"beverage", "water"}}));
  EventRecord u;
  u.tick = 1;
  u.agent = "a";
  u.kind = "utterance";
  u.message = "hello there";
  u.location = "office";
  ev.push_back(u);

  std::string text = events_to_jsonl(ev);
  CHECK(text.rfind("{\"schema\":\"indoorsim-events\",\"version\":1}\n", 0) == 0);
  std::istringstream in(text);
  auto back = events_from_jsonl(in);
  REQUIRE(back.size() == ev.size());
  CHECK(back[0].kind == "needs-sample");
  CHECK(back[0].unmet == json::array({"thirst"}));
  CHECK(back[1].detail.at("beverage") == "water");
  CHECK(back[1].duration == 1);
  CHECK(back[2].message == "hello there");
  // Re-serialization is byte-identical.
  CHECK(events_to_jsonl(back) == text);

  std::istringstream headerless("{\"tick\":0,\"agent\":\"a\",\"kind\":\"action\"}\n");
  CHECK_THROWS_AS(events_from_jsonl(headerless), std::runtime_error);
}

TEST_CASE("CSV and JSON serializations are frozen") {
  std::vector<EventRecord> ev;
  for (int t = 0; t < 2; ++t) {
    ev.push_back(sample(t, "a", t == 0 ? "office" : "kitchen"));
    ev.push_back(sample(t, "b", "kitchen"));
  }
  ev.push_back(outcome(0, "a", "go_to", true, 1));

  auto occ = occupancy_report(ev);
  CHECK(occupancy_csv(occ) ==
        "agent,kitchen,office\n"
        "a,0.5,0.5\n"
        "b,1,0\n");
  auto oj = occupancy_json(occ);
  CHECK(oj.at("total_ticks") == 2);
  CHECK(oj.at("fractions").at("a").at("office") == 0.5);

  auto act = activity_report(ev);
  CHECK(activity_csv(act) ==
        "agent,role-work,movement,social,physiological,other\n"
        "a,0,0.5,0,0,0.5\n"
        "b,0,0,0,0,1\n");
  auto aj = activity_json(act);
  CHECK(aj.at("fractions").at("a").at("movement") == 0.5);

  auto wb = wellbeing_report(ev);
  auto wj = wellbeing_json(wb);
  CHECK(wj.at("aggregate_optimal") == 1.0);
  CHECK(wj.at("optimal_fraction").at("a") == 1.0);
}
