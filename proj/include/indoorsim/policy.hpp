#pragma once

// Decision policies: generation-service backed, scripted playbook,
// needs-greedy scripted occupant, and uniform random. Policies see an
// immutable world snapshot plus the PolicyContext for their agent and
// return one command (optionally with an utterance payload).

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "indoorsim/engine.hpp"
#include "indoorsim/mind.hpp"
#include "indoorsim/world.hpp"

namespace indoorsim {

struct Decision {
  std::string command = "wait";
  std::string utterance;
  bool raw = false;  // learn-from-failure: dispatch even though inadmissible
};

// Preconditions hold for this command right now (same check dispatch runs).
inline bool command_feasible(const WorldState& w, const std::string& agent,
                             const std::string& command) {
  auto& mw = const_cast<WorldState&>(w);
  return dispatch_check(mw, agent, command, "", false).success;
}

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Decision decide(const WorldState& snapshot, const PolicyContext& ctx) = 0;
  // Dispatch result feedback; lets stateful policies advance only on success.
  virtual void notify(const std::string& /*agent*/, const std::string& /*command*/,
                      bool /*success*/) {}
};

class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}

  Decision decide(const WorldState&, const PolicyContext& ctx) override {
    Decision d;
    if (ctx.admissible.empty()) return d;
    std::uniform_int_distribution<size_t> dist(0, ctx.admissible.size() - 1);
    d.command = ctx.admissible[dist(rng_)];
    return d;
  }

 private:
  std::mt19937_64 rng_;
};

// One playbook step; `when` delays the step until a world predicate holds.
struct PlaybookStep {
  std::string command;
  std::string utterance;
  std::string when_entity;
  std::string when_key;  // "location", "receptacle", or a state attribute
  json when_value;
};

struct Playbook {
  std::map<std::string, std::vector<PlaybookStep>> steps;  // agent -> steps
};

inline Playbook playbook_from_json(const json& j) {
  Playbook p;
  for (const auto& [agent, arr] : j.items()) {
    for (const auto& js : arr) {
      PlaybookStep s;
      if (js.is_string()) {
        s.command = js.get<std::string>();
      } else {
        s.command = js.at("command").get<std::string>();
        s.utterance = js.value("utterance", std::string());
        if (js.contains("when")) {
          const auto& w = js.at("when");
          s.when_entity = w.at("entity").get<std::string>();
          s.when_key = w.at("key").get<std::string>();
          s.when_value = w.at("value");
        }
      }
      p.steps[agent].push_back(std::move(s));
    }
  }
  return p;
}

// Replays a fixed per-agent command sequence. A step whose guard is not yet
// satisfied, or whose preconditions do not yet hold (a busy dispenser, a
// colleague in the way), makes the agent wait and retry next tick; that is
// what produces queueing at contended resources.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(Playbook playbook) : playbook_(std::move(playbook)) {}

  Decision decide(const WorldState& snapshot, const PolicyContext& ctx) override {
    Decision d;
    auto it = playbook_.steps.find(ctx.agent);
    if (it == playbook_.steps.end()) return d;
    size_t& cursor = cursors_[ctx.agent];
    if (cursor >= it->second.size()) return d;
    const auto& step = it->second[cursor];
    if (!step.when_entity.empty() && !guard_holds(snapshot, step)) return d;
    if (!command_feasible(snapshot, ctx.agent, step.command)) return d;
    // Cursor advances in notify(), once the dispatch actually succeeded;
    // a same-tick race (say, a colleague grabbing the dispenser first)
    // leaves the step pending for a retry next tick.
    d.command = step.command;
    d.utterance = step.utterance;
    return d;
  }

  void notify(const std::string& agent, const std::string& command,
              bool success) override {
    if (!success) return;
    auto it = playbook_.steps.find(agent);
    if (it == playbook_.steps.end()) return;
    size_t& cursor = cursors_[agent];
    if (cursor < it->second.size() && it->second[cursor].command == command)
      cursor++;
  }

  bool finished(const std::string& agent) const {
    auto it = playbook_.steps.find(agent);
    if (it == playbook_.steps.end()) return true;
    auto c = cursors_.find(agent);
    return c != cursors_.end() && c->second >= it->second.size();
  }

 private:
  static bool guard_holds(const WorldState& w, const PlaybookStep& s) {
    const auto* e = w.find_entity(s.when_entity);
    if (e) {
      if (s.when_key == "location") return json(e->location) == s.when_value;
      if (s.when_key == "receptacle") return json(e->receptacle) == s.when_value;
      return e->state.value(s.when_key, json()) == s.when_value;
    }
    const auto* a = w.find_agent(s.when_entity);
    if (a && s.when_key == "location") return json(a->location) == s.when_value;
    return false;
  }

  Playbook playbook_;
  std::map<std::string, size_t> cursors_;
};

namespace policy_detail {

// Deterministic Dijkstra next hop; ties broken by location name.
inline std::string next_hop(const WorldState& w, const std::string& from,
                            const std::string& to) {
  if (from == to) return from;
  std::map<std::string, int> dist;
  std::map<std::string, std::string> first;
  using Item = std::tuple<int, std::string, std::string>;  // dist, node, first hop
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, from, ""});
  while (!pq.empty()) {
    auto [d, node, hop] = pq.top();
    pq.pop();
    if (dist.contains(node)) continue;
    dist[node] = d;
    first[node] = hop;
    if (node == to) return hop;
    for (const auto& [nbr, len] : w.locations.at(node).connections)
      if (!dist.contains(nbr)) pq.push({d + len, nbr, hop.empty() ? nbr : hop});
  }
  return "";
}

inline std::optional<std::string> nearest_location(
    const WorldState& w, const std::string& from,
    const std::function<bool(const Location&)>& pred) {
  std::map<std::string, int> dist;
  using Item = std::pair<int, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, from});
  while (!pq.empty()) {
    auto [d, node] = pq.top();
    pq.pop();
    if (dist.contains(node)) continue;
    dist[node] = d;
    if (pred(w.locations.at(node))) return node;
    for (const auto& [nbr, len] : w.locations.at(node).connections)
      if (!dist.contains(nbr)) pq.push({d + len, nbr});
  }
  return std::nullopt;
}

inline bool location_has_type(const WorldState& w, const Location& loc,
                              const std::string& otype) {
  for (const auto& n : loc.entities)
    if (w.entities.at(n).otype == otype) return true;
  return false;
}

}  // namespace policy_detail

// Deterministic occupant: satisfy the most urgent unmet need (with a
// configurable water/coffee preference), otherwise return to the home
// workspace and work at the desk. Used by the simulation-mode fixtures.
class NeedsGreedyPolicy : public Policy {
 public:
  explicit NeedsGreedyPolicy(std::string preference = "water")
      : preference_(std::move(preference)) {}

  Decision decide(const WorldState& w, const PolicyContext& ctx) override {
    namespace pd = policy_detail;
    Decision d;
    const auto& a = *w.find_agent(ctx.agent);
    auto& home = home_[ctx.agent];
    if (home.empty()) home = a.location;

    auto objective = plan(*ctx.memory, a, nullptr, w.needs_model);
    auto go_toward = [&](const std::string& target) {
      if (target.empty() || target == a.location) return false;
      auto hop = pd::next_hop(w, a.location, target);
      if (hop.empty()) return false;
      d.command = "go_to " + hop;
      return true;
    };
    auto feasible = [&](const std::string& cmd) {
      return command_feasible(w, ctx.agent, cmd);
    };

    if (objective.kind == Objective::Kind::Need) {
      if (objective.need == "hydration") {
        // Drink whatever is already in hand first.
        for (const auto& n : a.inventory)
          if (feasible("drink " + n)) {
            d.command = "drink " + n;
            return d;
          }
        const std::string machine =
            preference_ == "coffee" ? "CoffeeMachine" : "WaterDispenser";
        const std::string fill_verb =
            preference_ == "coffee" ? "brew_coffee" : "dispense_water";
        auto target = pd::nearest_location(w, a.location, [&](const Location& l) {
          return pd::location_has_type(w, l, machine);
        });
        if (!target) return d;
        if (a.location != *target) {
          go_toward(*target);
          return d;
        }
        for (const auto& n : a.inventory)
          if (feasible(fill_verb + " " + n)) {
            d.command = fill_verb + " " + n;
            return d;
          }
        // A dirty cup in hand goes into the local sinkbasin for a wash.
        for (const auto& n : a.inventory) {
          const auto& e = w.entities.at(n);
          if (e.otype != "Cup" || e.state_bool("is_clean", true)) continue;
          for (const auto& en : w.locations.at(a.location).entities)
            if (w.entities.at(en).otype == "Sinkbasin") {
              // Sinkbasins are open surfaces in most layouts.
              for (const char* verb : {"put_on", "put_in"})
                if (feasible(std::string(verb) + " " + n + " " + en)) {
                  d.command = std::string(verb) + " " + n + " " + en;
                  return d;
                }
            }
        }
        // Wash any dirty cup already sitting in a sinkbasin here.
        for (const auto& en : w.locations.at(a.location).entities) {
          const auto& e = w.entities.at(en);
          if (e.otype == "Cup" && !e.state_bool("is_clean", true) &&
              !e.receptacle.empty() &&
              w.entities.at(e.receptacle).otype == "Sinkbasin" &&
              feasible("clean " + en)) {
            d.command = "clean " + en;
            return d;
          }
        }
        if (a.inventory.empty()) {
          // Prefer a clean cup; failing that, take a dirty one to wash.
          for (const auto& en : w.locations.at(a.location).entities) {
            const auto& e = w.entities.at(en);
            if (e.otype == "Cup" && e.state_bool("is_clean", true) &&
                feasible("pick_up " + en)) {
              d.command = "pick_up " + en;
              return d;
            }
          }
          for (const auto& en : w.locations.at(a.location).entities) {
            const auto& e = w.entities.at(en);
            if (e.otype == "Cup" && feasible("pick_up " + en)) {
              d.command = "pick_up " + en;
              return d;
            }
          }
        }
        return d;  // machine busy or no cup: wait in place (queue)
      }
      if (objective.need == "fullness") {
        for (const auto& n : a.inventory)
          if (feasible("eat " + n)) {
            d.command = "eat " + n;
            return d;
          }
        auto has_food = [&](const Location& l) {
          for (const auto& n : l.entities) {
            const auto& e = w.entities.at(n);
            const auto* t = find_object_type(e.otype);
            if (t && t->is_consumable && e.held_by.empty()) return true;
          }
          return std::find(w.unlimited_locations.begin(), w.unlimited_locations.end(),
                           l.name) != w.unlimited_locations.end();
        };
        auto target = pd::nearest_location(w, a.location, has_food);
        if (!target) return d;
        if (a.location != *target) {
          go_toward(*target);
          return d;
        }
        for (const auto& en : w.locations.at(a.location).entities) {
          const auto& e = w.entities.at(en);
          const auto* t = find_object_type(e.otype);
          if (t && t->is_consumable && feasible("pick_up " + en)) {
            d.command = "pick_up " + en;
            return d;
          }
        }
        if (feasible("fetch_meal")) d.command = "fetch_meal";
        return d;
      }
      if (objective.need == "bladder") {
        auto target = pd::nearest_location(w, a.location, [&](const Location& l) {
          return l.name.find("restroom") != std::string::npos;
        });
        if (!target) return d;
        if (a.location != *target) {
          go_toward(*target);
          return d;
        }
        if (feasible("use_restroom")) d.command = "use_restroom";
        return d;
      }
      if (objective.need == "energy") {
        d.command = "rest";
        return d;
      }
      // social
      for (const auto& c : ctx.admissible)
        if (c.rfind("stay_chat", 0) == 0 || c.rfind("join_chat", 0) == 0 ||
            c.rfind("initiating_chat", 0) == 0) {
          d.command = c;
          d.utterance = "How is your day going?";
          return d;
        }
      return d;
    }

    // No pressing need: leave any chat, release carried items so others can
    // reuse them, head home, work.
    if (!a.conversation.empty()) {
      d.command = "end_chat";
      return d;
    }
    for (const auto& n : a.inventory)
      if (feasible("drop " + n)) {
        d.command = "drop " + n;
        return d;
      }
    if (a.location != home) {
      go_toward(home);
      return d;
    }
    if (feasible("work_at_desk")) d.command = "work_at_desk";
    return d;
  }

 private:
  std::string preference_;
  std::map<std::string, std::string> home_;
};

// Transport for the text-generation service: request in, reply text out.
using GenerationTransport = std::function<std::string(const json& request)>;

// Replays stored responses in consumption order; exhausted fixtures wait.
class RecordedTransport {
 public:
  explicit RecordedTransport(std::vector<std::string> responses)
      : responses_(std::move(responses)) {}

  static RecordedTransport from_json(const json& j) {
    std::vector<std::string> r;
    for (const auto& item : j) {
      if (item.is_string())
        r.push_back(item.get<std::string>());
      else
        r.push_back(item.value("text", std::string()));
    }
    return RecordedTransport(std::move(r));
  }

  std::string operator()(const json&) {
    if (next_ >= responses_.size()) return "REASON: nothing to do ACTION: wait";
    return responses_[next_++];
  }

 private:
  std::vector<std::string> responses_;
  size_t next_ = 0;
};

struct GenerationPolicyConfig {
  std::string model = "default";
  double temperature = 0.6;
  int max_retries = 3;
};

// ReAct-style generation policy: prompts the service with profile,
// observation, memory digest, reminder and the admissible list; parses the
// ACTION line; retries on inadmissible commands; after the retries the raw
// command is dispatched once so the agent can learn from the failure, or
// the agent waits when the reply is not even parseable.
class GenerationPolicy : public Policy {
 public:
  GenerationPolicy(GenerationTransport transport, GenerationPolicyConfig cfg = {})
      : transport_(std::move(transport)), cfg_(cfg) {}

  Decision decide(const WorldState& snapshot, const PolicyContext& ctx) override {
    Decision d;
    ParsedReply last;
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
      json request = json::object();
      request["model"] = cfg_.model;
      request["temperature"] = cfg_.temperature;
      request["messages"] = json::array();
      for (const auto& [role, text] : build_prompt(ctx))
        request["messages"].push_back(json{{"role", role}, {"content", text}});
      last_request_ = request;
      prompt_log_.push_back(request);
      std::string reply = transport_(request);
      last = parse_reply(reply);
      if (last.command.empty()) continue;
      if (last.command == "wait" ||
          command_feasible(snapshot, ctx.agent, last.command)) {
        d.command = last.command;
        d.utterance = last.utterance;
        return d;
      }
    }
    if (!last.command.empty()) {
      auto tokens = tokenize(last.command);
      const auto* spec = tokens.empty() ? nullptr : find_action(tokens[0]);
      if (spec && static_cast<int>(tokens.size()) == spec->arity + 1) {
        d.command = last.command;  // learn-from-failure: dispatch raw once
        d.utterance = last.utterance;
        d.raw = true;
        return d;
      }
    }
    return d;  // fall back to a no-op wait
  }

  const json& last_request() const { return last_request_; }
  const std::vector<json>& prompt_log() const { return prompt_log_; }

 private:
  GenerationTransport transport_;
  GenerationPolicyConfig cfg_;
  json last_request_;
  std::vector<json> prompt_log_;
};

struct PolicyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace indoorsim
