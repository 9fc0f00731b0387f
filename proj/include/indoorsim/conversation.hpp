#pragma once

// Multi-party conversation sessions: creation, joining, turn-taking,
// termination, and their coupling to agent state. Sessions live inside
// WorldState under the same single-writer discipline as everything else.

#include <string>
#include <vector>

#include "indoorsim/needs.hpp"
#include "indoorsim/world.hpp"

namespace indoorsim {
namespace conversation {

inline ConversationSession* session_at(WorldState& w, const std::string& location) {
  for (auto& [id, s] : w.conversations)
    if (s.location == location) return &s;
  return nullptr;
}

inline const ConversationSession* session_at(const WorldState& w,
                                             const std::string& location) {
  for (const auto& [id, s] : w.conversations)
    if (s.location == location) return &s;
  return nullptr;
}

// Knowledge transfer over the text channel: if an utterance spoken by an
// agent holding the booking password contains the literal password token,
// every other participant gains the knowledge entry.
inline void propagate_knowledge(WorldState& w, ConversationSession& s,
                                const AgentState& speaker, const std::string& text) {
  const std::string key = "booking_password:" + w.booking_password;
  if (w.booking_password.empty() || !speaker.knowledge.contains(key)) return;
  if (text.find(w.booking_password) == std::string::npos) return;
  for (const auto& p : s.participants)
    if (p != speaker.name) w.agents.at(p).knowledge.insert(key);
}

inline ActionOutcome initiate(WorldState& w, const std::string& initiator,
                              const std::string& target, const std::string& opening,
                              bool commit) {
  auto* a = w.find_agent(initiator);
  auto* b = w.find_agent(target);
  if (!a) return fail("unknown agent " + initiator);
  if (!b) return fail(initiator + " cannot find " + target + ".");
  if (a->name == b->name) return fail(initiator + " cannot chat alone.");
  if (b->location != a->location)
    return fail(initiator + " cannot find " + target + " here.");
  if (!a->conversation.empty())
    return fail(initiator + " is already in a conversation.");
  if (!b->conversation.empty())
    return fail(target + " is already in a conversation; use join_chat instead.");
  ActionOutcome out;
  out.success = true;
  out.duration_ticks = 1;
  out.message = initiator + " starts a conversation with " + target + ".";
  if (commit) {
    ConversationSession s;
    s.id = "chat_" + std::to_string(w.next_session_id++);
    s.location = a->location;
    s.participants = {a->name, b->name};
    s.transcript.push_back(Utterance{w.tick, a->name, opening});
    a->conversation = s.id;
    b->conversation = s.id;
    propagate_knowledge(w, s, *a, opening);
    out.diff.push_back({a->name, "conversation", "", s.id});
    out.diff.push_back({b->name, "conversation", "", s.id});
    w.conversations[s.id] = std::move(s);
  }
  return out;
}

inline ActionOutcome join(WorldState& w, const std::string& agent,
                          const std::string& session_id, bool commit) {
  auto* a = w.find_agent(agent);
  if (!a) return fail("unknown agent " + agent);
  if (!a->conversation.empty())
    return fail(agent + " is already in a conversation.");
  auto it = w.conversations.find(session_id);
  if (it == w.conversations.end())
    return fail(agent + " cannot find conversation " + session_id + ".");
  if (it->second.location != a->location)
    return fail(agent + " is not at the conversation's location.");
  ActionOutcome out;
  out.success = true;
  out.duration_ticks = 1;
  out.message = agent + " joins the conversation.";
  if (commit) {
    it->second.participants.push_back(agent);
    a->conversation = session_id;
    out.diff.push_back({agent, "conversation", "", session_id});
  }
  return out;
}

inline ActionOutcome stay(WorldState& w, const std::string& agent,
                          const std::string& utterance, bool commit) {
  auto* a = w.find_agent(agent);
  if (!a) return fail("unknown agent " + agent);
  if (a->conversation.empty())
    return fail(agent + " is not in a conversation.");
  auto& s = w.conversations.at(a->conversation);
  ActionOutcome out;
  out.success = true;
  out.duration_ticks = 1;
  out.message = agent + " says: " + utterance;
  if (commit) {
    s.transcript.push_back(Utterance{w.tick, agent, utterance});
    propagate_knowledge(w, s, *a, utterance);
    // Speaking restores social fulfillment for everyone present this tick.
    for (const auto& p : s.participants) {
      auto& pa = w.agents.at(p);
      pa.needs = apply_restoration(pa.needs, "stay_chat", w.needs_model);
    }
    out.diff.push_back({agent, "utterance", "", utterance});
  }
  return out;
}

// Removes the agent; a session left with fewer than 2 participants dissolves.
inline ActionOutcome leave(WorldState& w, const std::string& agent, bool commit) {
  auto* a = w.find_agent(agent);
  if (!a) return fail("unknown agent " + agent);
  if (a->conversation.empty())
    return fail(agent + " is not in a conversation.");
  ActionOutcome out;
  out.success = true;
  out.duration_ticks = 1;
  out.message = agent + " leaves the conversation.";
  if (commit) {
    const std::string sid = a->conversation;
    auto& s = w.conversations.at(sid);
    detail::erase_value(s.participants, agent);
    a->conversation.clear();
    out.diff.push_back({agent, "conversation", sid, ""});
    if (s.participants.size() < 2) {
      for (const auto& p : s.participants) {
        w.agents.at(p).conversation.clear();
        out.diff.push_back({p, "conversation", sid, ""});
      }
      w.conversations.erase(sid);
    }
  }
  return out;
}

// The §-style admissibility rules: stay/end only while in a session; join
// only when idle with an ongoing local session; initiate only toward idle
// co-located peers.
inline std::vector<std::string> admissible_conversation_actions(
    const WorldState& w, const std::string& agent) {
  std::vector<std::string> cmds;
  const auto* a = w.find_agent(agent);
  if (!a) return cmds;
  if (!a->conversation.empty()) {
    cmds.push_back("end_chat");
    cmds.push_back("stay_chat");
    return cmds;
  }
  for (const auto& peer : w.locations.at(a->location).agents) {
    if (peer == agent) continue;
    const auto& p = w.agents.at(peer);
    if (p.conversation.empty()) cmds.push_back("initiating_chat " + peer);
  }
  if (const auto* s = session_at(w, a->location))
    cmds.push_back("join_chat " + s->id);
  return cmds;
}

// Partition + locality invariants, used by property tests.
inline bool sessions_consistent(const WorldState& w) {
  std::set<std::string> seen;
  for (const auto& [id, s] : w.conversations) {
    if (s.participants.size() < 2) return false;
    for (const auto& p : s.participants) {
      if (!seen.insert(p).second) return false;  // disjointness
      const auto* a = w.find_agent(p);
      if (!a || a->conversation != id) return false;
      if (a->location != s.location) return false;  // locality
    }
    for (size_t i = 1; i < s.transcript.size(); ++i)
      if (s.transcript[i].tick < s.transcript[i - 1].tick) return false;
  }
  for (const auto& [n, a] : w.agents)
    if (!a.conversation.empty() && !w.conversations.contains(a.conversation))
      return false;
  return true;
}

}  // namespace conversation
}  // namespace indoorsim
