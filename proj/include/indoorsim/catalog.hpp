#pragma once

// Canonical catalog: 38 action types, 25 object types (7 receptacle types),
// 4 agent roles. Specs are immutable data; semantics live in engine.hpp.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/world.hpp"

namespace indoorsim {

enum class ActionCategory { Movement, Device, Kitchen, Work, Conversation };

struct ActionSpec {
  std::string verb;
  int arity = 0;
  std::string role_gate;  // skill name required, empty = ungated
  int base_duration = 1;
  ActionCategory category = ActionCategory::Movement;
  std::string summary;
};

struct ObjectTypeSpec {
  std::string name;
  bool is_receptacle_type = false;
  bool closable = false;
  int surface_capacity = 0;  // >0: things can be put on/in it
  double default_weight = 1.0;
  bool carryable = true;
  bool requires_receptacle = false;
  bool is_device = false;      // has is_turned_on / is_working
  bool is_repairable = false;
  bool is_consumable = false;  // eat removes it
  bool is_drink_container = false;
};

struct RoleDefinition {
  std::string name;
  std::map<std::string, double> skills;      // skill -> duration multiplier
  std::vector<std::string> knowledge_grants; // symbolic; password resolved at instantiation
};

inline const std::vector<ActionSpec>& catalog() {
  using C = ActionCategory;
  static const std::vector<ActionSpec> specs = {
      // movement / manipulation (9)
      {"go_to", 1, "", 1, C::Movement, "walk to a connected location (duration = distance)"},
      {"pick_up", 1, "", 1, C::Movement, "take a carryable object into inventory"},
      {"drop", 1, "", 1, C::Movement, "put a held object down at the current location"},
      {"put_on", 2, "", 1, C::Movement, "place a held object on an open surface"},
      {"put_in", 2, "", 1, C::Movement, "store a held object inside an open receptacle"},
      {"open", 1, "", 1, C::Movement, "open a closable receptacle"},
      {"close", 1, "", 1, C::Movement, "close a closable receptacle"},
      {"give_to", 2, "", 1, C::Movement, "hand a held object to a co-located agent"},
      {"look_around", 0, "", 1, C::Movement, "survey the current location"},
      // device operations (8)
      {"turn_on", 1, "", 1, C::Device, "power on a device"},
      {"turn_off", 1, "", 1, C::Device, "power off a device"},
      {"repair_computer", 1, "IT_admin", 5, C::Device, "repair a broken computer"},
      {"repair_projector", 1, "IT_admin", 5, C::Device, "repair a broken projector"},
      {"repair_microphone", 1, "IT_admin", 5, C::Device, "repair a broken microphone"},
      {"repair_coffee_machine", 1, "IT_admin", 5, C::Device, "repair a broken coffee machine"},
      {"repair_water_dispenser", 1, "IT_admin", 5, C::Device, "repair a broken water dispenser"},
      {"repair_microwave", 1, "IT_admin", 5, C::Device, "repair a broken microwave"},
      // kitchen / needs (12)
      {"clean", 1, "", 4, C::Kitchen, "wash an object sitting in a sinkbasin"},
      {"wash_hands", 0, "", 1, C::Kitchen, "wash hands at a sinkbasin"},
      {"brew_coffee", 1, "", 2, C::Kitchen, "fill a clean cup with coffee at a coffee machine"},
      {"make_tea", 1, "", 2, C::Kitchen, "fill a clean cup with tea (coffee machine + tea bag)"},
      {"dispense_water", 1, "", 2, C::Kitchen, "fill a clean cup at a water dispenser"},
      {"heat_food", 1, "", 3, C::Kitchen, "heat a meal in a microwave"},
      {"eat", 1, "", 5, C::Kitchen, "eat a held food item"},
      {"drink", 1, "", 1, C::Kitchen, "drink from a held filled cup"},
      {"use_restroom", 0, "", 2, C::Kitchen, "use the restroom"},
      {"rest", 0, "", 5, C::Kitchen, "take a short rest"},
      {"fetch_meal", 0, "", 10, C::Kitchen, "get a fresh meal (cafeteria only)"},
      {"refill_supplies", 0, "", 5, C::Kitchen, "restock shared supplies (cafeteria only)"},
      // role / work (5)
      {"work_at_desk", 0, "", 5, C::Work, "do role work at a desk"},
      {"book_meeting_room", 6, "", 2, C::Work,
       "book_meeting_room <terminal> <room> <event> <start> <end> <password>"},
      {"check_bookings", 1, "", 1, C::Work, "list bookings at a terminal"},
      {"move_furniture", 2, "", 1, C::Work, "carry a heavy item to a connected location"},
      {"inspect_device", 1, "", 1, C::Work, "report whether a device is working"},
      // conversation (4)
      {"initiating_chat", 1, "", 1, C::Conversation, "start a conversation with a co-located agent"},
      {"stay_chat", 0, "", 1, C::Conversation, "speak in the current conversation"},
      {"end_chat", 0, "", 1, C::Conversation, "leave the current conversation"},
      {"join_chat", 1, "", 1, C::Conversation, "join an ongoing local conversation"},
  };
  return specs;
}

inline const ActionSpec* find_action(const std::string& verb) {
  for (const auto& s : catalog())
    if (s.verb == verb) return &s;
  return nullptr;
}

inline const std::vector<ObjectTypeSpec>& object_types() {
  static const std::vector<ObjectTypeSpec> types = [] {
    std::vector<ObjectTypeSpec> t;
    auto add = [&](ObjectTypeSpec s) { t.push_back(std::move(s)); };
    // plain object types (18)
    add({.name = "Table", .surface_capacity = 20, .default_weight = 20.0});
    add({.name = "Chair", .default_weight = 7.0});
    add({.name = "Podium", .surface_capacity = 5, .default_weight = 40.0});
    add({.name = "Plate", .default_weight = 0.5});
    add({.name = "Knife", .default_weight = 0.1});
    add({.name = "Fork", .default_weight = 0.1});
    add({.name = "Cup", .default_weight = 0.3, .is_drink_container = true});
    add({.name = "Bread", .default_weight = 0.2, .is_consumable = true});
    add({.name = "Apple", .default_weight = 0.2, .is_consumable = true});
    add({.name = "Meal", .default_weight = 0.6, .is_consumable = true});
    add({.name = "TeaBag", .default_weight = 0.05});
    add({.name = "Computer", .default_weight = 5.0, .is_device = true, .is_repairable = true});
    add({.name = "Projector", .default_weight = 4.0, .is_device = true, .is_repairable = true});
    add({.name = "Microphone", .default_weight = 0.8, .is_device = true, .is_repairable = true});
    add({.name = "TouchScreen", .default_weight = 3.0, .carryable = false, .is_device = true});
    add({.name = "CoffeeMachine", .default_weight = 12.0, .carryable = false,
         .is_device = true, .is_repairable = true});
    add({.name = "WaterDispenser", .default_weight = 18.0, .carryable = false,
         .is_device = true, .is_repairable = true});
    add({.name = "Microwave", .default_weight = 14.0, .carryable = false,
         .is_device = true, .is_repairable = true});
    // receptacle types (7)
    add({.name = "Sinkbasin", .is_receptacle_type = true, .surface_capacity = 10,
         .default_weight = 15.0, .carryable = false});
    add({.name = "Cabinet", .is_receptacle_type = true, .closable = true,
         .surface_capacity = 10, .default_weight = 30.0, .carryable = false});
    add({.name = "Countertop", .is_receptacle_type = true, .surface_capacity = 20,
         .default_weight = 25.0, .carryable = false});
    add({.name = "Desk", .is_receptacle_type = true, .surface_capacity = 20,
         .default_weight = 22.0, .carryable = false});
    add({.name = "Shelf", .is_receptacle_type = true, .surface_capacity = 20,
         .default_weight = 18.0, .carryable = false});
    add({.name = "Trashbin", .is_receptacle_type = true, .surface_capacity = 10,
         .default_weight = 5.0, .carryable = false});
    add({.name = "Fridge", .is_receptacle_type = true, .closable = true,
         .surface_capacity = 10, .default_weight = 60.0, .carryable = false});
    return t;
  }();
  return types;
}

inline const ObjectTypeSpec* find_object_type(const std::string& name) {
  for (const auto& t : object_types())
    if (t.name == name) return &t;
  return nullptr;
}

// repair verb <-> device otype
inline std::optional<std::string> repair_verb_for(const std::string& otype) {
  static const std::map<std::string, std::string> m = {
      {"Computer", "repair_computer"},
      {"Projector", "repair_projector"},
      {"Microphone", "repair_microphone"},
      {"CoffeeMachine", "repair_coffee_machine"},
      {"WaterDispenser", "repair_water_dispenser"},
      {"Microwave", "repair_microwave"},
  };
  auto it = m.find(otype);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

inline const std::vector<RoleDefinition>& roles() {
  static const std::vector<RoleDefinition> defs = {
      {"janitor",
       {{"clean", 0.5}, {"move_furniture", 1.0}, {"wash_hands", 1.0}},
       {}},
      {"IT_admin",
       {{"repair_computer", 1.0},
        {"repair_projector", 1.0},
        {"repair_microphone", 1.0},
        {"repair_coffee_machine", 1.0},
        {"repair_water_dispenser", 1.0},
        {"repair_microwave", 1.0},
        {"inspect_device", 0.5}},
       {}},
      {"receptionist",
       {{"book_meeting_room", 0.5}, {"check_bookings", 1.0}},
       {"booking_password"}},
      {"software_engineer", {{"work_at_desk", 0.8}, {"inspect_device", 1.0}}, {}},
  };
  return defs;
}

inline const RoleDefinition* find_role(const std::string& name) {
  for (const auto& r : roles())
    if (r.name == name) return &r;
  return nullptr;
}

// ceil(base * multiplier), minimum 1. The multiplier comes from the agent's
// skill entry for the verb (1.0 when absent).
inline int effective_duration(const ActionSpec& spec, const AgentState& agent) {
  if (!spec.role_gate.empty() && !agent.skills.contains(spec.verb))
    throw std::invalid_argument("effective_duration: " + agent.name +
                                " is not qualified for " + spec.verb);
  double mult = 1.0;
  auto it = agent.skills.find(spec.verb);
  if (it != agent.skills.end()) mult = it->second;
  int d = static_cast<int>(std::ceil(spec.base_duration * mult));
  return d < 1 ? 1 : d;
}

inline const char* category_name(ActionCategory c) {
  switch (c) {
    case ActionCategory::Movement: return "movement";
    case ActionCategory::Device: return "device";
    case ActionCategory::Kitchen: return "kitchen";
    case ActionCategory::Work: return "work";
    case ActionCategory::Conversation: return "conversation";
  }
  return "other";
}

// Machine-readable action reference (the `actions` CLI subcommand emits this).
inline json catalog_json() {
  json j = json::object();
  j["actions"] = json::array();
  for (const auto& s : catalog()) {
    j["actions"].push_back(json{{"verb", s.verb},
                                {"arity", s.arity},
                                {"role_gate", s.role_gate},
                                {"base_duration", s.base_duration},
                                {"category", category_name(s.category)},
                                {"summary", s.summary}});
  }
  j["object_types"] = json::array();
  for (const auto& t : object_types())
    j["object_types"].push_back(
        json{{"name", t.name}, {"is_receptacle_type", t.is_receptacle_type}});
  j["roles"] = json::array();
  for (const auto& r : roles()) {
    json sk = json::object();
    for (const auto& [k, v] : r.skills) sk[k] = v;
    j["roles"].push_back(json{{"name", r.name},
                              {"skills", sk},
                              {"knowledge_grants", r.knowledge_grants}});
  }
  return j;
}

}  // namespace indoorsim
