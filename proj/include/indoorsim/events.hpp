#pragma once

// Event log records: the substrate for analytics. Serialized as JSON lines
// with a version header line.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/world.hpp"

namespace indoorsim {

inline constexpr int kEventSchemaVersion = 1;
inline constexpr const char* kEventSchemaName = "indoorsim-events";

struct EventRecord {
  int tick = 0;
  std::string agent;
  std::string kind;  // action | outcome | utterance | needs-sample
  std::string verb;
  std::vector<std::string> args;
  std::string command;
  bool success = false;
  std::string message;
  int duration = 0;
  std::string location;
  json needs;         // needs-sample only
  json unmet;         // needs-sample only: unmet need names
  json detail;        // verb-specific extras (e.g. beverage for drink)
};

inline json event_to_json(const EventRecord& e) {
  json j = json::object();
  j["tick"] = e.tick;
  j["agent"] = e.agent;
  j["kind"] = e.kind;
  if (e.kind == "action" || e.kind == "outcome") {
    j["verb"] = e.verb;
    j["args"] = e.args;
    j["command"] = e.command;
  }
  if (e.kind == "outcome") {
    j["success"] = e.success;
    j["message"] = e.message;
    j["duration"] = e.duration;
    if (!e.detail.is_null()) j["detail"] = e.detail;
  }
  if (e.kind == "utterance") j["message"] = e.message;
  if (e.kind == "needs-sample") {
    j["needs"] = e.needs;
    j["unmet"] = e.unmet;
  }
  j["location"] = e.location;
  return j;
}

inline EventRecord event_from_json(const json& j) {
  EventRecord e;
  e.tick = j.at("tick").get<int>();
  e.agent = j.at("agent").get<std::string>();
  e.kind = j.at("kind").get<std::string>();
  e.verb = j.value("verb", std::string());
  for (const auto& a : j.value("args", json::array()))
    e.args.push_back(a.get<std::string>());
  e.command = j.value("command", std::string());
  e.success = j.value("success", false);
  e.message = j.value("message", std::string());
  e.duration = j.value("duration", 0);
  e.location = j.value("location", std::string());
  if (j.contains("needs")) e.needs = j.at("needs");
  if (j.contains("unmet")) e.unmet = j.at("unmet");
  if (j.contains("detail")) e.detail = j.at("detail");
  return e;
}

inline std::string events_to_jsonl(const std::vector<EventRecord>& events) {
  std::ostringstream out;
  out << json{{"schema", kEventSchemaName}, {"version", kEventSchemaVersion}}.dump()
      << "\n";
  for (const auto& e : events) out << event_to_json(e).dump() << "\n";
  return out.str();
}

inline std::vector<EventRecord> events_from_jsonl(std::istream& in) {
  std::vector<EventRecord> events;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (!header_seen) {
      header_seen = true;
      if (j.value("schema", std::string()) != kEventSchemaName)
        throw std::runtime_error("event log is missing its schema header line");
      continue;
    }
    events.push_back(event_from_json(j));
  }
  return events;
}

inline std::vector<EventRecord> load_events(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open event log " + path);
  return events_from_jsonl(in);
}

}  // namespace indoorsim
