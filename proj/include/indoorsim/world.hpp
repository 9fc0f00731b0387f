#pragma once

// World state: entities, containment, movement, snapshots and diffs.
// All mutation flows through a single logical writer (see runner.hpp);
// snapshots are plain values safe to hand to concurrent readers.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "indoorsim/needs.hpp"

namespace indoorsim {

using json = nlohmann::ordered_json;

struct Location {
  std::string name;
  std::map<std::string, int> connections;  // neighbor -> distance (symmetric)
  std::vector<std::string> agents;
  std::vector<std::string> entities;  // objects + receptacles physically here
};

// One struct covers both plain objects and receptacles; receptacles carry
// rtype/contents/capacity. Surface-capable object types (Table, Podium)
// also get a nonzero capacity so things can be placed on them.
struct ObjectEntity {
  std::string name;
  std::string otype;
  std::string location;
  std::string receptacle;  // empty = not stored in/on anything
  std::string held_by;     // empty = not in any inventory
  double weight_kg = 1.0;
  bool carryable = true;
  bool requires_receptacle = false;

  bool is_receptacle = false;
  std::string rtype;
  std::vector<std::string> contents;
  int capacity = 0;
  int in_use_until = -1;  // shared devices are exclusive while an action runs

  json state = json::object();

  bool has_state(const std::string& key) const { return state.contains(key); }
  bool state_bool(const std::string& key, bool fallback = false) const {
    auto it = state.find(key);
    return it != state.end() && it->is_boolean() ? it->get<bool>() : fallback;
  }
  double temperature() const {
    auto it = state.find("temperature");
    return it != state.end() && it->is_number() ? it->get<double>() : 20.0;
  }
  bool closable() const { return state_bool("closable", false); }
  // Non-closable receptacles report is_open=true permanently.
  bool is_open() const { return !closable() || state_bool("is_open", false); }
  bool is_heated() const { return temperature() >= 60.0; }
};

struct AgentState {
  std::string name;
  std::string gender;
  std::string role;
  std::string location;
  double strength_kg = 65.0;
  std::string internal_profile;
  std::string appearance;
  NeedsState needs;
  std::vector<std::string> inventory;
  std::string conversation;  // session id, empty = idle
  std::map<std::string, double> skills;  // skill -> duration multiplier
  std::set<std::string> knowledge;
  std::string last_action;
  int last_action_tick = -1;
};

struct Booking {
  std::string room;
  std::string event;
  std::string start;
  std::string end;
  bool operator==(const Booking&) const = default;
};

struct Utterance {
  int tick = 0;
  std::string speaker;
  std::string text;
};

struct ConversationSession {
  std::string id;
  std::string location;
  std::vector<std::string> participants;
  std::vector<Utterance> transcript;
};

struct WorldState {
  int tick = 0;
  std::uint64_t rng_seed = 0;
  std::string booking_password;
  std::vector<std::string> unlimited_locations;  // e.g. cafeteria
  NeedsModel needs_model;

  std::map<std::string, Location> locations;
  std::vector<std::string> location_order;
  std::map<std::string, ObjectEntity> entities;
  std::vector<std::string> receptacle_order;
  std::vector<std::string> object_order;
  std::map<std::string, AgentState> agents;
  std::vector<std::string> agent_order;
  std::map<std::string, ConversationSession> conversations;
  int next_session_id = 1;
  int next_spawn_id = 1;
  std::vector<Booking> bookings;

  const Location* find_location(const std::string& n) const {
    auto it = locations.find(n);
    return it == locations.end() ? nullptr : &it->second;
  }
  Location* find_location(const std::string& n) {
    auto it = locations.find(n);
    return it == locations.end() ? nullptr : &it->second;
  }
  const ObjectEntity* find_entity(const std::string& n) const {
    auto it = entities.find(n);
    return it == entities.end() ? nullptr : &it->second;
  }
  ObjectEntity* find_entity(const std::string& n) {
    auto it = entities.find(n);
    return it == entities.end() ? nullptr : &it->second;
  }
  const AgentState* find_agent(const std::string& n) const {
    auto it = agents.find(n);
    return it == agents.end() ? nullptr : &it->second;
  }
  AgentState* find_agent(const std::string& n) {
    auto it = agents.find(n);
    return it == agents.end() ? nullptr : &it->second;
  }

  double carried_weight(const AgentState& a) const {
    double w = 0;
    for (const auto& n : a.inventory) {
      if (const auto* e = find_entity(n)) w += e->weight_kg;
    }
    return w;
  }

  // True when the entity is at the agent's location and not hidden inside a
  // closed receptacle (contents of a closed receptacle are invisible).
  bool visible_to(const AgentState& a, const ObjectEntity& e) const {
    if (e.held_by == a.name) return true;
    if (!e.held_by.empty()) return false;
    if (e.location != a.location) return false;
    if (!e.receptacle.empty()) {
      const auto* r = find_entity(e.receptacle);
      if (r && !r->is_open()) return false;
    }
    return true;
  }
};

struct DiffEntry {
  std::string entity;
  std::string attribute;
  json old_value;
  json new_value;
  bool operator==(const DiffEntry&) const = default;
};

struct ActionOutcome {
  bool success = false;
  std::string message;
  int duration_ticks = 1;
  std::vector<DiffEntry> diff;  // empty when success=false
};

inline ActionOutcome fail(std::string msg) {
  ActionOutcome o;
  o.success = false;
  o.message = std::move(msg);
  o.duration_ticks = 1;
  return o;
}

namespace detail {

inline void erase_value(std::vector<std::string>& v, const std::string& s) {
  std::erase(v, s);
}

inline json needs_to_json(const NeedsState& n) {
  return json{{"fullness", n.fullness},
              {"hydration", n.hydration},
              {"energy", n.energy},
              {"social_fulfillment", n.social_fulfillment},
              {"bladder", n.bladder}};
}

inline NeedsState needs_from_json(const json& j) {
  NeedsState n;
  n.fullness = j.value("fullness", 100.0);
  n.hydration = j.value("hydration", 100.0);
  n.energy = j.value("energy", 100.0);
  n.social_fulfillment = j.value("social_fulfillment", 100.0);
  n.bladder = j.value("bladder", 0.0);
  return n;
}

inline json entity_to_json(const ObjectEntity& e) {
  json j = json::object();
  j["name"] = e.name;
  j[e.is_receptacle ? "rtype" : "otype"] = e.is_receptacle ? e.rtype : e.otype;
  j["location"] = e.location;
  if (!e.receptacle.empty()) j["receptacle"] = e.receptacle;
  if (!e.held_by.empty()) j["held_by"] = e.held_by;
  j["weight_kg"] = e.weight_kg;
  j["carryable"] = e.carryable;
  j["requires_receptacle"] = e.requires_receptacle;
  if (e.is_receptacle || e.capacity > 0) j["capacity"] = e.capacity;
  if (e.in_use_until >= 0) j["in_use_until"] = e.in_use_until;
  j["state"] = e.state;
  return j;
}

}  // namespace detail

// Snapshot: scenario-shaped JSON plus runtime fields (tick, inventories,
// sessions, bookings). Round-trips losslessly through restore_snapshot.
inline json snapshot(const WorldState& w) {
  json j = json::object();
  j["tick"] = w.tick;
  j["locations"] = json::array();
  for (const auto& ln : w.location_order) j["locations"].push_back(ln);
  j["location_distances"] = json::object();
  for (const auto& ln : w.location_order) {
    json conns = json::object();
    for (const auto& [nbr, d] : w.locations.at(ln).connections) conns[nbr] = d;
    j["location_distances"][ln] = conns;
  }
  j["receptacles"] = json::array();
  for (const auto& n : w.receptacle_order)
    j["receptacles"].push_back(detail::entity_to_json(w.entities.at(n)));
  j["objects"] = json::array();
  for (const auto& n : w.object_order)
    j["objects"].push_back(detail::entity_to_json(w.entities.at(n)));
  j["agents"] = json::array();
  for (const auto& an : w.agent_order) {
    const auto& a = w.agents.at(an);
    json ja = json::object();
    ja["name"] = a.name;
    ja["gender"] = a.gender;
    ja["role"] = a.role;
    ja["location"] = a.location;
    ja["fullness"] = a.needs.fullness;
    ja["hydration"] = a.needs.hydration;
    ja["energy"] = a.needs.energy;
    ja["social_fulfillment"] = a.needs.social_fulfillment;
    ja["bladder"] = a.needs.bladder;
    ja["strength_kg"] = a.strength_kg;
    ja["internal_profile"] = a.internal_profile;
    ja["appearance"] = a.appearance;
    ja["inventory"] = a.inventory;
    if (!a.conversation.empty()) ja["conversation"] = a.conversation;
    json sk = json::object();
    for (const auto& [k, v] : a.skills) sk[k] = v;
    ja["skills"] = sk;
    ja["knowledge"] = json::array();
    for (const auto& k : a.knowledge) ja["knowledge"].push_back(k);
    j["agents"].push_back(ja);
  }
  json settings = json::object();
  settings["booking_password"] = w.booking_password;
  settings["seed"] = w.rng_seed;
  settings["unlimited_locations"] = w.unlimited_locations;
  settings["next_session_id"] = w.next_session_id;
  settings["next_spawn_id"] = w.next_spawn_id;
  j["settings"] = settings;
  j["bookings"] = json::array();
  for (const auto& b : w.bookings)
    j["bookings"].push_back(json{{"room", b.room},
                                 {"event", b.event},
                                 {"start", b.start},
                                 {"end", b.end}});
  j["conversations"] = json::array();
  for (const auto& [id, s] : w.conversations) {
    json js = json::object();
    js["id"] = s.id;
    js["location"] = s.location;
    js["participants"] = s.participants;
    js["transcript"] = json::array();
    for (const auto& u : s.transcript)
      js["transcript"].push_back(json{{"tick", u.tick},
                                      {"speaker", u.speaker},
                                      {"text", u.text}});
    j["conversations"].push_back(js);
  }
  return j;
}

inline WorldState restore_snapshot(const json& j) {
  WorldState w;
  w.tick = j.value("tick", 0);
  for (const auto& ln : j.at("locations")) {
    Location loc;
    loc.name = ln.get<std::string>();
    w.location_order.push_back(loc.name);
    w.locations[loc.name] = loc;
  }
  if (j.contains("location_distances")) {
    for (const auto& [from, conns] : j.at("location_distances").items()) {
      for (const auto& [to, d] : conns.items())
        w.locations.at(from).connections[to] = d.get<int>();
    }
  }
  auto load_entity = [&](const json& je, bool recept) {
    ObjectEntity e;
    e.name = je.at("name").get<std::string>();
    e.is_receptacle = recept;
    if (recept)
      e.rtype = e.otype = je.at("rtype").get<std::string>();
    else
      e.otype = je.at("otype").get<std::string>();
    e.location = je.at("location").get<std::string>();
    e.receptacle = je.value("receptacle", std::string());
    e.held_by = je.value("held_by", std::string());
    e.weight_kg = je.value("weight_kg", 1.0);
    e.carryable = je.value("carryable", !recept);
    e.requires_receptacle = je.value("requires_receptacle", false);
    e.capacity = je.value("capacity", 0);
    e.in_use_until = je.value("in_use_until", -1);
    if (je.contains("state")) e.state = je.at("state");
    w.entities[e.name] = e;
    (recept ? w.receptacle_order : w.object_order).push_back(e.name);
  };
  for (const auto& je : j.value("receptacles", json::array())) load_entity(je, true);
  for (const auto& je : j.value("objects", json::array())) load_entity(je, false);
  for (const auto& ja : j.value("agents", json::array())) {
    AgentState a;
    a.name = ja.at("name").get<std::string>();
    a.gender = ja.value("gender", std::string());
    a.role = ja.at("role").get<std::string>();
    a.location = ja.at("location").get<std::string>();
    a.needs = detail::needs_from_json(ja);
    a.strength_kg = ja.value("strength_kg", 65.0);
    a.internal_profile = ja.value("internal_profile", std::string());
    a.appearance = ja.value("appearance", std::string());
    for (const auto& n : ja.value("inventory", json::array()))
      a.inventory.push_back(n.get<std::string>());
    a.conversation = ja.value("conversation", std::string());
    const json skills = ja.value("skills", json::object());
    for (const auto& [k, v] : skills.items())
      a.skills[k] = v.get<double>();
    for (const auto& k : ja.value("knowledge", json::array()))
      a.knowledge.insert(k.get<std::string>());
    w.agent_order.push_back(a.name);
    w.agents[a.name] = a;
  }
  if (j.contains("settings")) {
    const auto& s = j.at("settings");
    w.booking_password = s.value("booking_password", std::string());
    w.rng_seed = s.value("seed", std::uint64_t{0});
    for (const auto& u : s.value("unlimited_locations", json::array()))
      w.unlimited_locations.push_back(u.get<std::string>());
    w.next_session_id = s.value("next_session_id", 1);
    w.next_spawn_id = s.value("next_spawn_id", 1);
  }
  for (const auto& jb : j.value("bookings", json::array()))
    w.bookings.push_back(Booking{jb.at("room"), jb.at("event"), jb.at("start"),
                                 jb.at("end")});
  for (const auto& js : j.value("conversations", json::array())) {
    ConversationSession s;
    s.id = js.at("id").get<std::string>();
    s.location = js.at("location").get<std::string>();
    for (const auto& p : js.at("participants"))
      s.participants.push_back(p.get<std::string>());
    for (const auto& u : js.value("transcript", json::array()))
      s.transcript.push_back(
          Utterance{u.at("tick").get<int>(), u.at("speaker").get<std::string>(),
                    u.at("text").get<std::string>()});
    w.conversations[s.id] = s;
  }
  // Rebuild location membership indexes.
  for (const auto& [n, e] : w.entities)
    if (e.held_by.empty()) w.locations.at(e.location).entities.push_back(n);
  for (const auto& an : w.agent_order)
    w.locations.at(w.agents.at(an).location).agents.push_back(an);
  // Rebuild receptacle contents from member objects, preserving object order.
  for (const auto& n : w.object_order) {
    const auto& e = w.entities.at(n);
    if (!e.receptacle.empty() && e.held_by.empty())
      w.entities.at(e.receptacle).contents.push_back(n);
  }
  return w;
}

// Attribute-level change list between two snapshots of the same world.
inline std::vector<DiffEntry> diff(const WorldState& a, const WorldState& b) {
  std::vector<DiffEntry> out;
  auto push = [&](const std::string& ent, const std::string& attr, json ov, json nv) {
    if (ov != nv) out.push_back(DiffEntry{ent, attr, std::move(ov), std::move(nv)});
  };
  for (const auto& [n, ea] : a.entities) {
    const auto* eb = b.find_entity(n);
    if (!eb) {
      push(n, "exists", true, false);
      continue;
    }
    push(n, "location", ea.location, eb->location);
    push(n, "receptacle", ea.receptacle, eb->receptacle);
    push(n, "held_by", ea.held_by, eb->held_by);
    std::set<std::string> keys;
    for (const auto& [k, v] : ea.state.items()) keys.insert(k);
    for (const auto& [k, v] : eb->state.items()) keys.insert(k);
    for (const auto& k : keys)
      push(n, k, ea.state.value(k, json()), eb->state.value(k, json()));
  }
  for (const auto& [n, eb] : b.entities)
    if (!a.find_entity(n)) push(n, "exists", false, true);
  for (const auto& [n, aa] : a.agents) {
    const auto* ab = b.find_agent(n);
    if (!ab) continue;
    push(n, "location", aa.location, ab->location);
    push(n, "inventory", aa.inventory, ab->inventory);
    push(n, "conversation", aa.conversation, ab->conversation);
    push(n, "needs", detail::needs_to_json(aa.needs), detail::needs_to_json(ab->needs));
  }
  if (a.bookings.size() != b.bookings.size())
    push("world", "bookings", static_cast<int>(a.bookings.size()),
         static_cast<int>(b.bookings.size()));
  return out;
}

// Containment must stay a forest: nothing transitively contains itself.
inline bool containment_is_forest(const WorldState& w) {
  for (const auto& [name, e] : w.entities) {
    std::set<std::string> seen;
    const ObjectEntity* cur = &e;
    while (!cur->receptacle.empty()) {
      if (!seen.insert(cur->name).second) return false;
      cur = w.find_entity(cur->receptacle);
      if (!cur) break;
    }
    if (cur && seen.contains(cur->name)) return false;
  }
  return true;
}

}  // namespace indoorsim
