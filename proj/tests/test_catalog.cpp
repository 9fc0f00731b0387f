#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "indoorsim/catalog.hpp"

using namespace indoorsim;

TEST_CASE("catalog counts: 38 actions, 25 object types, 7 receptacle types, 4 roles") {
  CHECK(catalog().size() == 38);
  std::set<std::string> verbs;
  for (const auto& s : catalog()) verbs.insert(s.verb);
  CHECK(verbs.size() == 38);  // no duplicates

  CHECK(object_types().size() == 25);
  int receptacle_types = 0;
  for (const auto& t : object_types())
    if (t.is_receptacle_type) receptacle_types++;
  CHECK(receptacle_types == 7);

  CHECK(roles().size() == 4);
}

TEST_CASE("category sizes match the verb grouping") {
  std::map<ActionCategory, int> counts;
  for (const auto& s : catalog()) counts[s.category]++;
  CHECK(counts[ActionCategory::Movement] == 9);
  CHECK(counts[ActionCategory::Device] == 8);
  CHECK(counts[ActionCategory::Kitchen] == 12);
  CHECK(counts[ActionCategory::Work] == 5);
  CHECK(counts[ActionCategory::Conversation] == 4);
}

TEST_CASE("only repair verbs are role-gated") {
  for (const auto& s : catalog()) {
    if (s.verb.rfind("repair_", 0) == 0)
      CHECK(s.role_gate == "IT_admin");
    else
      CHECK(s.role_gate.empty());
  }
}

TEST_CASE("wait is not a catalog verb") {
  CHECK(find_action("wait") == nullptr);
  CHECK(find_action("go_to") != nullptr);
  CHECK(find_action("go_to")->arity == 1);
  CHECK(find_action("book_meeting_room")->arity == 6);
}

TEST_CASE("repair verb mapping covers exactly the repairable device types") {
  int repairable = 0;
  for (const auto& t : object_types()) {
    if (t.is_repairable) {
      repairable++;
      auto v = repair_verb_for(t.name);
      REQUIRE(v.has_value());
      CHECK(find_action(*v) != nullptr);
    } else {
      CHECK_FALSE(repair_verb_for(t.name).has_value());
    }
  }
  CHECK(repairable == 6);
}

TEST_CASE("role definitions grant the documented skills") {
  const auto* janitor = find_role("janitor");
  REQUIRE(janitor);
  CHECK(janitor->skills.at("clean") == 0.5);

  const auto* it = find_role("IT_admin");
  REQUIRE(it);
  for (const auto& t : object_types())
    if (t.is_repairable) CHECK(it->skills.contains(*repair_verb_for(t.name)));

  const auto* recep = find_role("receptionist");
  REQUIRE(recep);
  CHECK(recep->skills.contains("book_meeting_room"));
  CHECK(recep->knowledge_grants == std::vector<std::string>{"booking_password"});

  CHECK(find_role("software_engineer") != nullptr);
  CHECK(find_role("ceo") == nullptr);
}

TEST_CASE("effective duration rounds up and enforces gating") {
  AgentState janitor;
  janitor.name = "j";
  janitor.skills = find_role("janitor")->skills;
  const auto* clean = find_action("clean");
  CHECK(effective_duration(*clean, janitor) == 2);  // 4 * 0.5

  AgentState other;
  other.name = "o";
  CHECK(effective_duration(*clean, other) == 4);

  const auto* repair = find_action("repair_computer");
  CHECK_THROWS_AS(effective_duration(*repair, other), std::invalid_argument);
  AgentState it;
  it.name = "i";
  it.skills = find_role("IT_admin")->skills;
  CHECK(effective_duration(*repair, it) == 5);
}

TEST_CASE("catalog_json dump shape") {
  auto j = catalog_json();
  CHECK(j.at("actions").size() == 38);
  CHECK(j.at("object_types").size() == 25);
  CHECK(j.at("roles").size() == 4);
  CHECK(j.at("actions")[0].contains("verb"));
  CHECK(j.at("actions")[0].contains("arity"));
}
