#pragma once

// Generic state transitions: command parsing, precondition checking,
// effect application, and admissible-action computation.
//
// Every verb runs through one try_* routine with a commit flag; the
// admissible set is the candidate set filtered through the same routines
// with commit=false, so an admissible command can never fail its own
// preconditions when dispatched against the same state.

#include <algorithm>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "indoorsim/catalog.hpp"
#include "indoorsim/conversation.hpp"
#include "indoorsim/needs.hpp"
#include "indoorsim/world.hpp"

namespace indoorsim {

inline std::vector<std::string> tokenize(const std::string& command) {
  std::istringstream iss(command);
  std::vector<std::string> tokens;
  std::string t;
  while (iss >> t) tokens.push_back(t);
  return tokens;
}

namespace engine_detail {

inline ObjectEntity* visible_entity(WorldState& w, const AgentState& a,
                                    const std::string& name) {
  auto* e = w.find_entity(name);
  if (!e || !w.visible_to(a, *e)) return nullptr;
  return e;
}

// Something of the given otype usable at the agent's location (visible,
// working if it is a device, and not exclusively in use by someone else).
inline ObjectEntity* usable_device(WorldState& w, const AgentState& a,
                                   const std::string& otype) {
  for (const auto& n : w.locations.at(a.location).entities) {
    auto& e = w.entities.at(n);
    if (e.otype != otype || !w.visible_to(a, e)) continue;
    if (e.state_bool("is_working", true) && e.in_use_until <= w.tick) return &e;
  }
  return nullptr;
}

inline bool type_present(const WorldState& w, const AgentState& a,
                         const std::string& otype) {
  for (const auto& n : w.locations.at(a.location).entities) {
    const auto& e = w.entities.at(n);
    if (e.otype == otype && w.visible_to(a, e)) return true;
  }
  for (const auto& n : a.inventory)
    if (w.entities.at(n).otype == otype) return true;
  return false;
}

inline void detach_entity(WorldState& w, ObjectEntity& e) {
  if (!e.receptacle.empty()) {
    if (auto* r = w.find_entity(e.receptacle)) detail::erase_value(r->contents, e.name);
    e.receptacle.clear();
  }
  detail::erase_value(w.locations.at(e.location).entities, e.name);
}

inline void place_entity(WorldState& w, ObjectEntity& e, const std::string& location,
                         const std::string& receptacle) {
  e.location = location;
  e.receptacle = receptacle;
  e.held_by.clear();
  w.locations.at(location).entities.push_back(e.name);
  if (!receptacle.empty()) w.entities.at(receptacle).contents.push_back(e.name);
}

inline void leave_conversation_if_any(WorldState& w, AgentState& a) {
  if (!a.conversation.empty()) conversation::leave(w, a.name, true);
}

// Relocates the agent, carried items, and (optionally) one dragged entity
// with everything resting on it.
inline void relocate_agent(WorldState& w, AgentState& a, const std::string& dest,
                           ObjectEntity* dragged) {
  leave_conversation_if_any(w, a);
  detail::erase_value(w.locations.at(a.location).agents, a.name);
  a.location = dest;
  w.locations.at(dest).agents.push_back(a.name);
  for (const auto& n : a.inventory) w.entities.at(n).location = dest;
  if (dragged) {
    std::vector<std::string> moved = dragged->contents;
    detach_entity(w, *dragged);
    place_entity(w, *dragged, dest, "");
    dragged->contents = moved;
    for (const auto& n : moved) {
      auto& c = w.entities.at(n);
      detail::erase_value(w.locations.at(c.location).entities, n);
      c.location = dest;
      c.receptacle = dragged->name;
      w.locations.at(dest).entities.push_back(n);
    }
  }
}

inline bool iso_timestamp(const std::string& s) {
  static const std::regex re(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2})");
  return std::regex_match(s, re);
}

inline std::string underscores_to_spaces(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

inline bool location_is_restroom(const std::string& name) {
  return name.find("restroom") != std::string::npos;
}

inline bool location_is_unlimited(const WorldState& w, const std::string& name) {
  return std::find(w.unlimited_locations.begin(), w.unlimited_locations.end(),
                   name) != w.unlimited_locations.end();
}

}  // namespace engine_detail

// Parses the command, checks preconditions, and (when commit) applies
// effects atomically. Invalid commands come back as failed outcomes, never
// exceptions; failures carry fixed human-readable diagnostics.
inline ActionOutcome dispatch_check(WorldState& w, const std::string& agent_name,
                                    const std::string& command,
                                    const std::string& utterance, bool commit) {
  namespace ed = engine_detail;
  auto* agent = w.find_agent(agent_name);
  if (!agent) return fail("unknown agent " + agent_name);
  AgentState& a = *agent;

  auto tokens = tokenize(command);
  if (tokens.empty()) return fail(a.name + " cannot parse command " + command + ".");
  const std::string verb = tokens[0];
  std::vector<std::string> args(tokens.begin() + 1, tokens.end());

  if (verb == "wait") {  // runner-level no-op, not part of the catalog
    ActionOutcome o;
    o.success = true;
    o.duration_ticks = 1;
    o.message = a.name + " waits.";
    return o;
  }

  const ActionSpec* spec = find_action(verb);
  if (!spec) return fail(a.name + " cannot perform action " + verb + ".");
  if (static_cast<int>(args.size()) != spec->arity)
    return fail(a.name + " received an incorrect number of arguments for action " +
                verb + ".");
  if (!spec->role_gate.empty() && !a.skills.contains(verb))
    return fail(a.name + " cannot perform action " + verb + ".");

  ActionOutcome out;
  out.success = true;
  out.duration_ticks = effective_duration(*spec, a);
  auto set_diff = [&](const std::string& ent, const std::string& attr, json ov,
                      json nv) {
    if (commit) out.diff.push_back({ent, attr, std::move(ov), std::move(nv)});
  };

  if (verb == "go_to") {
    const std::string& dest = args[0];
    if (!w.find_location(dest)) return fail(a.name + " cannot find " + dest + ".");
    if (dest == a.location) return fail(a.name + " is already at " + dest + ".");
    auto& conns = w.locations.at(a.location).connections;
    auto it = conns.find(dest);
    if (it == conns.end())
      return fail(a.name + " cannot go to " + dest + " from " + a.location + ".");
    out.duration_ticks = std::max(1, it->second);
    out.message = a.name + " goes to " + dest + ".";
    set_diff(a.name, "location", a.location, dest);
    if (commit) ed::relocate_agent(w, a, dest, nullptr);
    return out;
  }

  if (verb == "pick_up") {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e) return fail(a.name + " cannot find " + args[0] + ".");
    if (e->held_by == a.name) return fail(a.name + " is already holding " + e->name + ".");
    if (!e->carryable || e->state_bool("fixed"))
      return fail(e->name + " cannot be picked up.");
    if (!e->contents.empty()) return fail(e->name + " is not empty.");
    if (a.inventory.size() >= 2) return fail(a.name + "'s hands are full.");
    if (w.carried_weight(a) + e->weight_kg > a.strength_kg)
      return fail(e->name + " is too heavy for " + a.name + ".");
    out.message = a.name + " picks up " + e->name + ".";
    set_diff(e->name, "held_by", "", a.name);
    if (commit) {
      ed::detach_entity(w, *e);
      e->held_by = a.name;
      a.inventory.push_back(e->name);
    }
    return out;
  }

  if (verb == "drop") {
    auto* e = w.find_entity(args[0]);
    if (!e || e->held_by != a.name)
      return fail(a.name + " is not holding " + args[0] + ".");
    if (e->requires_receptacle)
      return fail(e->name + " must be placed in or on a receptacle.");
    out.message = a.name + " drops " + e->name + ".";
    set_diff(e->name, "held_by", a.name, "");
    if (commit) {
      detail::erase_value(a.inventory, e->name);
      ed::place_entity(w, *e, a.location, "");
    }
    return out;
  }

  if (verb == "put_on" || verb == "put_in") {
    auto* e = w.find_entity(args[0]);
    if (!e || e->held_by != a.name)
      return fail(a.name + " is not holding " + args[0] + ".");
    auto* r = ed::visible_entity(w, a, args[1]);
    if (!r) return fail(a.name + " cannot find " + args[1] + ".");
    if (r->name == e->name || r->capacity <= 0)
      return fail("cannot place " + e->name + " on " + args[1] + ".");
    if (verb == "put_in" && !r->closable())
      return fail(r->name + " is an open surface; use put_on.");
    if (verb == "put_on" && r->closable())
      return fail(r->name + " is enclosed; use put_in.");
    if (!r->is_open()) return fail(r->name + " is closed.");
    if (static_cast<int>(r->contents.size()) >= r->capacity)
      return fail(r->name + " is full.");
    out.message = a.name + " puts " + e->name + (verb == "put_in" ? " in " : " on ") +
                  r->name + ".";
    set_diff(e->name, "receptacle", "", r->name);
    if (commit) {
      detail::erase_value(a.inventory, e->name);
      ed::place_entity(w, *e, a.location, r->name);
    }
    return out;
  }

  if (verb == "open" || verb == "close") {
    auto* r = ed::visible_entity(w, a, args[0]);
    if (!r) return fail(a.name + " cannot find " + args[0] + ".");
    if (!r->closable()) return fail(r->name + " cannot be " + verb + "ed.");
    const bool opening = verb == "open";
    if (r->state_bool("is_open") == opening)
      return fail(r->name + " is already " + (opening ? "open" : "closed") + ".");
    out.message = r->name + " is now " + (opening ? "open" : "closed") + ".";
    set_diff(r->name, "is_open", !opening, opening);
    if (commit) r->state["is_open"] = opening;
    return out;
  }

  if (verb == "give_to") {
    auto* e = w.find_entity(args[0]);
    if (!e || e->held_by != a.name)
      return fail(a.name + " is not holding " + args[0] + ".");
    auto* b = w.find_agent(args[1]);
    if (!b || b->location != a.location || b->name == a.name)
      return fail(a.name + " cannot find " + args[1] + " here.");
    if (b->inventory.size() >= 2) return fail(b->name + "'s hands are full.");
    if (w.carried_weight(*b) + e->weight_kg > b->strength_kg)
      return fail(e->name + " is too heavy for " + b->name + ".");
    out.message = a.name + " gives " + e->name + " to " + b->name + ".";
    set_diff(e->name, "held_by", a.name, b->name);
    if (commit) {
      detail::erase_value(a.inventory, e->name);
      e->held_by = b->name;
      b->inventory.push_back(e->name);
    }
    return out;
  }

  if (verb == "look_around") {
    out.message = a.name + " looks around " + a.location + ".";
    return out;
  }

  if (verb == "turn_on" || verb == "turn_off") {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e) return fail(a.name + " cannot find " + args[0] + ".");
    const auto* t = find_object_type(e->otype);
    if (!t || !t->is_device)
      return fail(e->name + " cannot be turned " +
                  (verb == "turn_on" ? "on" : "off") + ".");
    const bool on = verb == "turn_on";
    if (e->state_bool("is_turned_on") == on)
      return fail(e->name + " is already turned " + (on ? "on" : "off") + ".");
    out.message = e->name + " is now turned " + (on ? "on" : "off") + ".";
    set_diff(e->name, "is_turned_on", !on, on);
    if (commit) e->state["is_turned_on"] = on;
    return out;
  }

  if (verb.rfind("repair_", 0) == 0 && spec->category == ActionCategory::Device) {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e)
      return fail(a.name + " cannot find " + args[0] + " in the current location.");
    auto rv = repair_verb_for(e->otype);
    if (!rv) return fail(e->name + " is not a repairable electronic device.");
    if (*rv != verb) return fail("cannot use " + verb + " on " + e->name + ".");
    if (e->state_bool("is_working", true))
      return fail(e->name + " is already in working condition.");
    out.message = a.name + " repaired the " + e->name + ".";
    set_diff(e->name, "is_working", false, true);
    if (commit) e->state["is_working"] = true;
    return out;
  }

  if (verb == "clean") {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e) return fail(a.name + " cannot find " + args[0] + ".");
    if (e->receptacle.empty() || w.entities.at(e->receptacle).otype != "Sinkbasin")
      return fail(e->name + " must be in a sinkbasin to be cleaned.");
    if (e->state_bool("is_clean", true))
      return fail(e->name + " is already clean.");
    out.message = a.name + " cleans " + e->name + ".";
    set_diff(e->name, "is_clean", false, true);
    if (commit) e->state["is_clean"] = true;
    return out;
  }

  if (verb == "wash_hands") {
    if (!ed::type_present(w, a, "Sinkbasin"))
      return fail("there is no sinkbasin at " + a.location + ".");
    out.message = a.name + " washes their hands.";
    return out;
  }

  if (verb == "brew_coffee" || verb == "make_tea" || verb == "dispense_water") {
    auto* cup = ed::visible_entity(w, a, args[0]);
    if (!cup) return fail(a.name + " cannot find " + args[0] + ".");
    if (cup->otype != "Cup") return fail(cup->name + " is not a cup.");
    if (!cup->state_bool("is_clean", true)) return fail(cup->name + " is not clean.");
    if (cup->state.contains("contains") && !cup->state["contains"].get<std::string>().empty())
      return fail(cup->name + " already contains " +
                  cup->state["contains"].get<std::string>() + ".");
    const std::string machine_type =
        verb == "dispense_water" ? "WaterDispenser" : "CoffeeMachine";
    auto* machine = ed::usable_device(w, a, machine_type);
    if (!machine)
      return fail("no available " + machine_type + " at " + a.location + ".");
    if (verb == "make_tea" && !ed::type_present(w, a, "TeaBag"))
      return fail("there are no tea bags at " + a.location + ".");
    const std::string beverage = verb == "brew_coffee"  ? "coffee"
                                 : verb == "make_tea"   ? "tea"
                                                        : "water";
    out.message = cup->name + " is filled with " + beverage + ".";
    set_diff(cup->name, "contains", "", beverage);
    if (commit) {
      cup->state["contains"] = beverage;
      machine->in_use_until = w.tick + out.duration_ticks;
    }
    return out;
  }

  if (verb == "heat_food") {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e) return fail(a.name + " cannot find " + args[0] + ".");
    if (e->otype != "Meal") return fail(e->name + " cannot be heated.");
    if (e->is_heated()) return fail(e->name + " is already heated.");
    auto* oven = ed::usable_device(w, a, "Microwave");
    if (!oven) return fail("no available Microwave at " + a.location + ".");
    out.message = e->name + " is heated.";
    set_diff(e->name, "temperature", e->temperature(), 70.0);
    if (commit) {
      e->state["temperature"] = 70.0;
      oven->in_use_until = w.tick + out.duration_ticks;
    }
    return out;
  }

  if (verb == "eat") {
    auto* e = w.find_entity(args[0]);
    if (!e || e->held_by != a.name)
      return fail(a.name + " is not holding " + args[0] + ".");
    const auto* t = find_object_type(e->otype);
    if (!t || !t->is_consumable) return fail(e->name + " is not edible.");
    out.message = a.name + " eats the " + e->name + ".";
    set_diff(e->name, "exists", true, false);
    if (commit) {
      detail::erase_value(a.inventory, e->name);
      detail::erase_value(w.object_order, e->name);
      w.entities.erase(e->name);
      a.needs = apply_restoration(a.needs, "eat", w.needs_model);
    }
    return out;
  }

  if (verb == "drink") {
    auto* e = w.find_entity(args[0]);
    if (!e || e->held_by != a.name)
      return fail(a.name + " is not holding " + args[0] + ".");
    if (e->otype != "Cup") return fail(e->name + " is not a cup.");
    const std::string beverage =
        e->state.contains("contains") ? e->state["contains"].get<std::string>() : "";
    if (beverage.empty()) return fail(e->name + " is empty.");
    out.message = a.name + " drinks the " + beverage + ".";
    set_diff(e->name, "contains", beverage, "");
    if (commit) {
      e->state.erase("contains");
      e->state["is_clean"] = false;
      a.needs = apply_restoration(a.needs, "drink", w.needs_model);
    }
    return out;
  }

  if (verb == "use_restroom") {
    if (!ed::location_is_restroom(a.location))
      return fail(a.location + " is not a restroom.");
    out.message = a.name + " uses the restroom.";
    set_diff(a.name, "bladder", a.needs.bladder, 0.0);
    if (commit) a.needs = apply_restoration(a.needs, "use_restroom", w.needs_model);
    return out;
  }

  if (verb == "rest") {
    out.message = a.name + " takes a rest.";
    set_diff(a.name, "energy", a.needs.energy,
             clamp_need(a.needs.energy + w.needs_model.rest_restore));
    if (commit) a.needs = apply_restoration(a.needs, "rest", w.needs_model);
    return out;
  }

  if (verb == "fetch_meal") {
    if (!ed::location_is_unlimited(w, a.location))
      return fail("meals can only be fetched at an unlimited-supply location.");
    if (a.inventory.size() >= 2) return fail(a.name + "'s hands are full.");
    out.message = a.name + " fetches a fresh meal.";
    if (commit) {
      ObjectEntity meal;
      meal.name = "meal_fresh_" + std::to_string(w.next_spawn_id++);
      meal.otype = "Meal";
      meal.location = a.location;
      meal.held_by = a.name;
      meal.weight_kg = 0.6;
      meal.state = json{{"is_clean", true}, {"temperature", 70.0}};
      out.diff.push_back({meal.name, "exists", false, true});
      w.entities[meal.name] = meal;
      w.object_order.push_back(meal.name);
      a.inventory.push_back(meal.name);
    }
    return out;
  }

  if (verb == "refill_supplies") {
    if (!ed::location_is_unlimited(w, a.location))
      return fail("supplies can only be refilled at an unlimited-supply location.");
    out.message = a.name + " restocks the supplies.";
    return out;
  }

  if (verb == "work_at_desk") {
    if (!ed::type_present(w, a, "Desk"))
      return fail("there is no desk at " + a.location + ".");
    out.message = a.name + " works at the desk.";
    return out;
  }

  if (verb == "book_meeting_room") {
    const std::string& terminal = args[0];
    const std::string& room = args[1];
    const std::string event = ed::underscores_to_spaces(args[2]);
    const std::string& start = args[3];
    const std::string& end = args[4];
    const std::string& password = args[5];
    auto* term = ed::visible_entity(w, a, terminal);
    if (!term) return fail(a.name + " cannot find " + terminal + ".");
    const bool touchscreen = term->otype == "TouchScreen";
    const bool computer = term->otype == "Computer" && term->state_bool("is_turned_on");
    if (!touchscreen && !computer)
      return fail(terminal + " cannot be used for booking.");
    if (!w.find_location(room)) return fail(a.name + " cannot find " + room + ".");
    if (!ed::iso_timestamp(start) || !ed::iso_timestamp(end) || end <= start)
      return fail("malformed booking time range.");
    if (password != w.booking_password) return fail("incorrect password.");
    for (const auto& b : w.bookings)
      if (b.room == room && b.start < end && start < b.end)
        return fail(room + " is already booked for that time.");
    out.message = room + " is booked for " + event + " from " + start + " to " + end + ".";
    set_diff("world", "bookings", static_cast<int>(w.bookings.size()),
             static_cast<int>(w.bookings.size()) + 1);
    if (commit) w.bookings.push_back(Booking{room, event, start, end});
    return out;
  }

  if (verb == "check_bookings") {
    auto* term = ed::visible_entity(w, a, args[0]);
    if (!term) return fail(a.name + " cannot find " + args[0] + ".");
    if (term->otype != "TouchScreen" &&
        !(term->otype == "Computer" && term->state_bool("is_turned_on")))
      return fail(args[0] + " cannot be used for booking.");
    std::string msg = "bookings:";
    for (const auto& b : w.bookings)
      msg += " [" + b.room + " | " + b.event + " | " + b.start + " - " + b.end + "]";
    if (w.bookings.empty()) msg += " none";
    out.message = msg;
    return out;
  }

  if (verb == "move_furniture") {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e) return fail(a.name + " cannot find " + args[0] + ".");
    if (e->state_bool("fixed")) return fail(e->name + " is fixed in place.");
    if (!e->held_by.empty()) return fail(e->name + " is being carried.");
    if (e->weight_kg > a.strength_kg)
      return fail(e->name + " is too heavy for " + a.name + ".");
    const std::string& dest = args[1];
    auto& conns = w.locations.at(a.location).connections;
    auto it = conns.find(dest);
    if (it == conns.end())
      return fail(a.name + " cannot go to " + dest + " from " + a.location + ".");
    out.duration_ticks = std::max(1, it->second);
    out.message = a.name + " moves " + e->name + " to " + dest + ".";
    set_diff(e->name, "location", e->location, dest);
    set_diff(a.name, "location", a.location, dest);
    if (commit) ed::relocate_agent(w, a, dest, e);
    return out;
  }

  if (verb == "inspect_device") {
    auto* e = ed::visible_entity(w, a, args[0]);
    if (!e) return fail(a.name + " cannot find " + args[0] + ".");
    const auto* t = find_object_type(e->otype);
    if (!t || !t->is_device) return fail(e->name + " is not a device.");
    out.message = e->name + (e->state_bool("is_working", true)
                                 ? " is in working condition."
                                 : " is broken.");
    return out;
  }

  if (verb == "initiating_chat")
    return conversation::initiate(w, a.name, args[0],
                                  utterance.empty() ? "Hello." : utterance, commit);
  if (verb == "join_chat") return conversation::join(w, a.name, args[0], commit);
  if (verb == "stay_chat")
    return conversation::stay(w, a.name, utterance.empty() ? "..." : utterance, commit);
  if (verb == "end_chat") return conversation::leave(w, a.name, commit);

  return fail(a.name + " cannot perform action " + verb + ".");
}

inline ActionOutcome dispatch(WorldState& w, const std::string& agent,
                              const std::string& command,
                              const std::string& utterance = "") {
  return dispatch_check(w, agent, command, utterance, true);
}

// Every fully-instantiated command whose preconditions hold for this agent
// now, in lexicographic order. Throws on an unknown agent name.
inline std::vector<std::string> admissible_actions(const WorldState& world,
                                                   const std::string& agent_name) {
  const auto* agent = world.find_agent(agent_name);
  if (!agent) throw std::out_of_range("admissible_actions: unknown agent " + agent_name);
  const AgentState& a = *agent;

  std::vector<std::string> candidates;
  auto add = [&](std::string cmd) { candidates.push_back(std::move(cmd)); };

  const auto& loc = world.locations.at(a.location);
  for (const auto& [nbr, d] : loc.connections) add("go_to " + nbr);

  std::vector<std::string> reachable;  // visible local entities + inventory
  for (const auto& n : loc.entities)
    if (world.visible_to(a, world.entities.at(n))) reachable.push_back(n);
  for (const auto& n : a.inventory) reachable.push_back(n);

  for (const auto& n : reachable) {
    const auto& e = world.entities.at(n);
    const auto* t = find_object_type(e.otype);
    add("pick_up " + n);
    if (e.closable()) {
      add("open " + n);
      add("close " + n);
    }
    if (t && t->is_device) {
      add("turn_on " + n);
      add("turn_off " + n);
      add("inspect_device " + n);
    }
    if (auto rv = repair_verb_for(e.otype); rv && a.skills.contains(*rv))
      add(*rv + " " + n);
    add("clean " + n);
    if (e.otype == "Meal") add("heat_food " + n);
    if (e.otype == "Cup") {
      add("brew_coffee " + n);
      add("make_tea " + n);
      add("dispense_water " + n);
    }
    for (const auto& [nbr, d] : loc.connections) add("move_furniture " + n + " " + nbr);
    if (e.otype == "TouchScreen" || e.otype == "Computer") add("check_bookings " + n);
  }

  for (const auto& n : a.inventory) {
    add("drop " + n);
    add("eat " + n);
    add("drink " + n);
    for (const auto& rn : loc.entities) {
      const auto& r = world.entities.at(rn);
      if (r.capacity > 0 && world.visible_to(a, r))
        add((r.closable() ? "put_in " : "put_on ") + n + " " + rn);
    }
    for (const auto& peer : loc.agents)
      if (peer != a.name) add("give_to " + n + " " + peer);
  }

  add("look_around");
  add("wash_hands");
  add("use_restroom");
  add("rest");
  add("fetch_meal");
  add("refill_supplies");
  add("work_at_desk");

  if (a.knowledge.contains("booking_password:" + world.booking_password) &&
      !world.booking_password.empty()) {
    for (const auto& n : reachable) {
      const auto& e = world.entities.at(n);
      if (e.otype != "TouchScreen" && e.otype != "Computer") continue;
      for (const auto& ln : world.location_order)
        add("book_meeting_room " + n + " " + ln +
            " meeting 2024-09-02T12:00:00 2024-09-02T13:00:00 " +
            world.booking_password);
    }
  }

  for (auto& c : conversation::admissible_conversation_actions(world, a.name))
    add(std::move(c));

  // Filter through the shared precondition path; commit=false leaves the
  // world untouched.
  std::vector<std::string> admissible;
  WorldState& mutable_world = const_cast<WorldState&>(world);
  for (const auto& cmd : candidates) {
    if (dispatch_check(mutable_world, a.name, cmd, "", false).success)
      admissible.push_back(cmd);
  }
  std::sort(admissible.begin(), admissible.end());
  admissible.erase(std::unique(admissible.begin(), admissible.end()),
                   admissible.end());
  return admissible;
}

// Agent relocation as a standalone operation (command-independent path used
// by tests and tools). Objects move only while carried or dragged.
inline ActionOutcome move_entity(WorldState& w, const std::string& agent,
                                 const std::string& destination) {
  return dispatch(w, agent, "go_to " + destination);
}

}  // namespace indoorsim
