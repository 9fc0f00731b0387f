#pragma once

// Scenario files: parsing, strict validation, and instantiation into an
// initial WorldState. The file format is the flat JSON shape shown in
// data/schema/scenario.schema.json plus an optional "settings" object.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/catalog.hpp"
#include "indoorsim/world.hpp"

namespace indoorsim {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioEntity {
  std::string name;
  std::string type;  // otype or rtype
  std::string location;
  std::string receptacle;  // objects only
  double weight_kg = 0;
  bool has_weight = false;
  json state = json::object();
};

struct ScenarioAgent {
  std::string name;
  std::string gender;
  std::string role;
  std::string location;
  NeedsState needs;
  double strength_kg = 65.0;
  std::string internal_profile;
  std::string appearance;
};

struct ScenarioSettings {
  std::string booking_password;
  std::uint64_t seed = 0;
  std::vector<std::string> unlimited_locations;
  json needs_model = json::object();  // optional NeedsModel overrides
};

struct ScenarioConfig {
  std::vector<std::string> locations;
  std::map<std::string, std::map<std::string, int>> location_distances;
  std::vector<ScenarioEntity> receptacles;
  std::vector<ScenarioEntity> objects;
  std::vector<ScenarioAgent> agents;
  ScenarioSettings settings;
};

namespace scenario_detail {

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                                const std::string& path) {
  for (const auto& [k, v] : j.items())
    if (!allowed.contains(k))
      throw ScenarioError("unknown key '" + k + "' at " + path);
}

inline std::string require_string(const json& j, const std::string& key,
                                  const std::string& path) {
  if (!j.contains(key))
    throw ScenarioError("missing required field '" + key + "' at " + path);
  if (!j.at(key).is_string())
    throw ScenarioError("field '" + key + "' at " + path + " must be a string");
  return j.at(key).get<std::string>();
}

inline ScenarioEntity parse_entity(const json& j, bool receptacle,
                                   const std::string& path) {
  std::set<std::string> allowed = {"name", "location", "weight_kg", "state"};
  allowed.insert(receptacle ? "rtype" : "otype");
  if (!receptacle) allowed.insert("receptacle");
  reject_unknown_keys(j, allowed, path);
  ScenarioEntity e;
  e.name = require_string(j, "name", path);
  e.type = require_string(j, receptacle ? "rtype" : "otype", path);
  e.location = require_string(j, "location", path);
  if (j.contains("receptacle")) e.receptacle = j.at("receptacle").get<std::string>();
  if (j.contains("weight_kg")) {
    e.weight_kg = j.at("weight_kg").get<double>();
    e.has_weight = true;
    if (e.weight_kg <= 0)
      throw ScenarioError("weight_kg must be positive at " + path);
  }
  if (j.contains("state")) {
    if (!j.at("state").is_object())
      throw ScenarioError("'state' at " + path + " must be an object");
    e.state = j.at("state");
  }
  return e;
}

}  // namespace scenario_detail

inline ScenarioConfig parse_scenario(const json& j) {
  namespace sd = scenario_detail;
  if (!j.is_object()) throw ScenarioError("scenario root must be a JSON object");
  sd::reject_unknown_keys(j,
                          {"locations", "location_distances", "receptacles",
                           "objects", "agents", "settings"},
                          "$");
  ScenarioConfig cfg;
  if (!j.contains("locations") || !j.at("locations").is_array() ||
      j.at("locations").empty())
    throw ScenarioError("missing required field 'locations' (non-empty array)");
  for (const auto& l : j.at("locations")) cfg.locations.push_back(l.get<std::string>());
  const json distances = j.value("location_distances", json::object());
  for (const auto& [from, conns] : distances.items())
    for (const auto& [to, d] : conns.items())
      cfg.location_distances[from][to] = d.get<int>();
  int i = 0;
  for (const auto& r : j.value("receptacles", json::array()))
    cfg.receptacles.push_back(
        sd::parse_entity(r, true, "$.receptacles[" + std::to_string(i++) + "]"));
  i = 0;
  for (const auto& o : j.value("objects", json::array()))
    cfg.objects.push_back(
        sd::parse_entity(o, false, "$.objects[" + std::to_string(i++) + "]"));
  i = 0;
  for (const auto& a : j.value("agents", json::array())) {
    const std::string path = "$.agents[" + std::to_string(i++) + "]";
    sd::reject_unknown_keys(a,
                            {"name", "gender", "role", "location", "fullness",
                             "hydration", "energy", "social_fulfillment", "bladder",
                             "strength_kg", "internal_profile", "appearance"},
                            path);
    ScenarioAgent ag;
    ag.name = sd::require_string(a, "name", path);
    ag.gender = a.value("gender", std::string());
    ag.role = sd::require_string(a, "role", path);
    ag.location = sd::require_string(a, "location", path);
    ag.needs.fullness = a.value("fullness", 100.0);
    ag.needs.hydration = a.value("hydration", 100.0);
    ag.needs.energy = a.value("energy", 100.0);
    ag.needs.social_fulfillment = a.value("social_fulfillment", 100.0);
    ag.needs.bladder = a.value("bladder", 0.0);
    ag.strength_kg = a.value("strength_kg", 65.0);
    ag.internal_profile = a.value("internal_profile", std::string());
    ag.appearance = a.value("appearance", std::string());
    cfg.agents.push_back(std::move(ag));
  }
  if (j.contains("settings")) {
    const auto& s = j.at("settings");
    sd::reject_unknown_keys(
        s, {"booking_password", "seed", "unlimited_locations", "needs_model"},
        "$.settings");
    cfg.settings.booking_password = s.value("booking_password", std::string());
    cfg.settings.seed = s.value("seed", std::uint64_t{0});
    for (const auto& u : s.value("unlimited_locations", json::array()))
      cfg.settings.unlimited_locations.push_back(u.get<std::string>());
    cfg.settings.needs_model = s.value("needs_model", json::object());
  }
  return cfg;
}

inline ScenarioConfig parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(j);
}

// Canonical serialization; parse∘serialize is identity on valid configs.
inline json serialize_scenario(const ScenarioConfig& cfg) {
  json j = json::object();
  j["locations"] = cfg.locations;
  j["location_distances"] = json::object();
  for (const auto& ln : cfg.locations) {
    json conns = json::object();
    auto it = cfg.location_distances.find(ln);
    if (it != cfg.location_distances.end()) {
      std::vector<std::string> nbrs;
      for (const auto& [to, d] : it->second) nbrs.push_back(to);
      std::sort(nbrs.begin(), nbrs.end());
      for (const auto& to : nbrs) conns[to] = it->second.at(to);
    }
    j["location_distances"][ln] = conns;
  }
  auto emit = [&](const ScenarioEntity& e, bool recept) {
    json je = json::object();
    je["name"] = e.name;
    je[recept ? "rtype" : "otype"] = e.type;
    je["location"] = e.location;
    if (!e.receptacle.empty()) je["receptacle"] = e.receptacle;
    if (e.has_weight) je["weight_kg"] = e.weight_kg;
    je["state"] = e.state;
    return je;
  };
  j["receptacles"] = json::array();
  for (const auto& r : cfg.receptacles) j["receptacles"].push_back(emit(r, true));
  j["objects"] = json::array();
  for (const auto& o : cfg.objects) j["objects"].push_back(emit(o, false));
  j["agents"] = json::array();
  for (const auto& a : cfg.agents) {
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
    j["agents"].push_back(ja);
  }
  json s = json::object();
  s["booking_password"] = cfg.settings.booking_password;
  s["seed"] = cfg.settings.seed;
  s["unlimited_locations"] = cfg.settings.unlimited_locations;
  s["needs_model"] = cfg.settings.needs_model;
  j["settings"] = s;
  return j;
}

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
};

// Referential integrity, distance symmetry, connectivity, capacities,
// role validity. Diagnostics are returned, never thrown.
inline std::vector<Diagnostic> validate(const ScenarioConfig& cfg) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string m) {
    out.push_back({Diagnostic::Severity::Error, std::move(m)});
  };
  auto warning = [&](std::string m) {
    out.push_back({Diagnostic::Severity::Warning, std::move(m)});
  };

  std::set<std::string> locs(cfg.locations.begin(), cfg.locations.end());
  if (locs.size() != cfg.locations.size()) error("duplicate location names");
  std::set<std::string> names;
  auto unique_name = [&](const std::string& n, const std::string& kind) {
    if (!names.insert(n).second) error("duplicate " + kind + " name " + n);
  };
  for (const auto& l : cfg.locations) unique_name(l, "location");

  for (const auto& [from, conns] : cfg.location_distances) {
    if (!locs.contains(from)) error("location_distances references unknown location " + from);
    for (const auto& [to, d] : conns) {
      if (!locs.contains(to))
        error("location_distances references unknown location " + to);
      if (d <= 0)
        error("distance " + from + " -> " + to + " must be positive");
      auto rit = cfg.location_distances.find(to);
      if (rit == cfg.location_distances.end() || !rit->second.contains(from) ||
          rit->second.at(from) != d)
        error("asymmetric distance between " + from + " and " + to);
    }
  }

  // connectivity (warning only)
  if (!cfg.locations.empty()) {
    std::set<std::string> seen;
    std::vector<std::string> stack = {cfg.locations.front()};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      auto it = cfg.location_distances.find(cur);
      if (it != cfg.location_distances.end())
        for (const auto& [to, d] : it->second) stack.push_back(to);
    }
    if (seen.size() < locs.size())
      warning("location graph is disconnected");
  }

  std::set<std::string> recept_names;
  for (const auto& r : cfg.receptacles) {
    unique_name(r.name, "receptacle");
    recept_names.insert(r.name);
    const auto* t = find_object_type(r.type);
    if (!t || !t->is_receptacle_type)
      error("receptacle " + r.name + " has unknown rtype " + r.type);
    if (!locs.contains(r.location))
      error("receptacle " + r.name + " references unknown location " + r.location);
  }
  // surface-capable objects (tables, podiums) may also hold things
  std::set<std::string> surface_objects;
  for (const auto& o : cfg.objects) {
    const auto* t = find_object_type(o.type);
    if (t && t->surface_capacity > 0) surface_objects.insert(o.name);
  }
  std::map<std::string, int> initial_contents;
  for (const auto& o : cfg.objects) {
    unique_name(o.name, "object");
    const auto* t = find_object_type(o.type);
    if (!t)
      error("object " + o.name + " has unknown otype " + o.type);
    else if (t->is_receptacle_type)
      error("object " + o.name + " uses receptacle type " + o.type +
            "; list it under receptacles");
    if (!locs.contains(o.location))
      error("object " + o.name + " references unknown location " + o.location);
    if (!o.receptacle.empty()) {
      if (recept_names.contains(o.receptacle) || surface_objects.contains(o.receptacle))
        initial_contents[o.receptacle]++;
      else
        error("object " + o.name + " references unknown receptacle " + o.receptacle);
    }
  }
  for (const auto& r : cfg.receptacles) {
    const auto* t = find_object_type(r.type);
    if (t && t->is_receptacle_type && initial_contents[r.name] > t->surface_capacity)
      error("receptacle " + r.name + " holds " +
            std::to_string(initial_contents[r.name]) + " objects, capacity " +
            std::to_string(t->surface_capacity));
  }
  for (const auto& a : cfg.agents) {
    unique_name(a.name, "agent");
    if (!find_role(a.role)) error("agent " + a.name + " has unknown role " + a.role);
    if (!locs.contains(a.location))
      error("agent " + a.name + " references unknown location " + a.location);
    if (a.strength_kg <= 0) error("agent " + a.name + " strength_kg must be positive");
  }
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  });
}

inline NeedsModel needs_model_from_overrides(const json& overrides) {
  NeedsModel m;
  m.hydration_decay = overrides.value("hydration_decay", m.hydration_decay);
  m.fullness_decay = overrides.value("fullness_decay", m.fullness_decay);
  m.energy_decay = overrides.value("energy_decay", m.energy_decay);
  m.social_decay = overrides.value("social_decay", m.social_decay);
  m.bladder_rise = overrides.value("bladder_rise", m.bladder_rise);
  m.eat_restore = overrides.value("eat_restore", m.eat_restore);
  m.drink_restore = overrides.value("drink_restore", m.drink_restore);
  m.drink_bladder = overrides.value("drink_bladder", m.drink_bladder);
  m.rest_restore = overrides.value("rest_restore", m.rest_restore);
  m.chat_restore = overrides.value("chat_restore", m.chat_restore);
  m.unmet_threshold = overrides.value("unmet_threshold", m.unmet_threshold);
  m.bladder_threshold = overrides.value("bladder_threshold", m.bladder_threshold);
  return m;
}

// Builds the tick-0 WorldState. Refuses configs with validation errors.
inline WorldState instantiate(const ScenarioConfig& cfg) {
  auto diags = validate(cfg);
  if (has_errors(diags)) {
    std::string msg = "invalid scenario:";
    for (const auto& d : diags)
      if (d.severity == Diagnostic::Severity::Error) msg += "\n  " + d.message;
    throw ScenarioError(msg);
  }
  WorldState w;
  w.booking_password = cfg.settings.booking_password;
  w.rng_seed = cfg.settings.seed;
  w.unlimited_locations = cfg.settings.unlimited_locations;
  w.needs_model = needs_model_from_overrides(cfg.settings.needs_model);
  for (const auto& ln : cfg.locations) {
    Location l;
    l.name = ln;
    auto it = cfg.location_distances.find(ln);
    if (it != cfg.location_distances.end()) l.connections = it->second;
    w.location_order.push_back(ln);
    w.locations[ln] = std::move(l);
  }
  auto make_entity = [&](const ScenarioEntity& se, bool recept) {
    const auto* t = find_object_type(se.type);
    ObjectEntity e;
    e.name = se.name;
    e.otype = se.type;
    e.is_receptacle = recept;
    if (recept) e.rtype = se.type;
    e.location = se.location;
    e.receptacle = se.receptacle;
    e.weight_kg = se.has_weight ? se.weight_kg : t->default_weight;
    e.carryable = t->carryable;
    e.requires_receptacle = t->requires_receptacle;
    e.capacity = t->surface_capacity;
    e.state = se.state;
    if (!e.state.contains("temperature")) e.state["temperature"] = 20.0;
    if (t->closable && !e.state.contains("closable")) e.state["closable"] = true;
    if (t->closable && !e.state.contains("is_open")) e.state["is_open"] = false;
    if (t->is_device && !e.state.contains("is_working")) e.state["is_working"] = true;
    if (t->is_device && !e.state.contains("is_turned_on"))
      e.state["is_turned_on"] = false;
    w.entities[e.name] = e;
    (recept ? w.receptacle_order : w.object_order).push_back(e.name);
    w.locations.at(e.location).entities.push_back(e.name);
  };
  for (const auto& r : cfg.receptacles) make_entity(r, true);
  for (const auto& o : cfg.objects) make_entity(o, false);
  for (const auto& n : w.object_order) {
    const auto& e = w.entities.at(n);
    if (!e.receptacle.empty()) w.entities.at(e.receptacle).contents.push_back(n);
  }
  for (const auto& sa : cfg.agents) {
    AgentState a;
    a.name = sa.name;
    a.gender = sa.gender;
    a.role = sa.role;
    a.location = sa.location;
    a.needs = sa.needs;
    a.strength_kg = sa.strength_kg;
    a.internal_profile = sa.internal_profile;
    a.appearance = sa.appearance;
    const auto* role = find_role(sa.role);
    a.skills = role->skills;
    for (const auto& grant : role->knowledge_grants)
      if (grant == "booking_password" && !w.booking_password.empty())
        a.knowledge.insert("booking_password:" + w.booking_password);
    w.agent_order.push_back(a.name);
    w.locations.at(a.location).agents.push_back(a.name);
    w.agents[a.name] = std::move(a);
  }
  return w;
}

}  // namespace indoorsim
