#pragma once

// Physiological/social need decay, restoration, and well-being classification.

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace indoorsim {

struct NeedsState {
  double fullness = 100.0;
  double hydration = 100.0;
  double energy = 100.0;
  double social_fulfillment = 100.0;
  double bladder = 0.0;  // rises with drinking; restroom resets

  bool operator==(const NeedsState&) const = default;
};

// Engine parameters; per-scenario overridable via the "settings" block.
struct NeedsModel {
  double hydration_decay = 0.25;
  double fullness_decay = 0.15;
  double energy_decay = 0.10;
  double social_decay = 0.10;
  double bladder_rise = 0.05;

  double eat_restore = 40.0;
  double drink_restore = 40.0;
  double drink_bladder = 20.0;
  double rest_restore = 30.0;
  double chat_restore = 5.0;

  double unmet_threshold = 30.0;   // declining needs unmet below this
  double bladder_threshold = 70.0; // bladder unmet above this
};

inline double clamp_need(double v) { return std::clamp(v, 0.0, 100.0); }

inline NeedsState tick_decay(const NeedsState& n, const NeedsModel& m, int dt) {
  if (dt < 0) throw std::invalid_argument("tick_decay: dt must be >= 0");
  NeedsState out = n;
  out.hydration = clamp_need(n.hydration - m.hydration_decay * dt);
  out.fullness = clamp_need(n.fullness - m.fullness_decay * dt);
  out.energy = clamp_need(n.energy - m.energy_decay * dt);
  out.social_fulfillment = clamp_need(n.social_fulfillment - m.social_decay * dt);
  out.bladder = clamp_need(n.bladder + m.bladder_rise * dt);
  return out;
}

// Unmet needs by name; empty set means optimal.
// Naming: low fullness reads as "hunger", low hydration as "thirst".
inline std::set<std::string> unmet_needs(const NeedsState& n, const NeedsModel& m) {
  std::set<std::string> unmet;
  if (n.fullness < m.unmet_threshold) unmet.insert("hunger");
  if (n.hydration < m.unmet_threshold) unmet.insert("thirst");
  if (n.energy < m.unmet_threshold) unmet.insert("fatigue");
  if (n.social_fulfillment < m.unmet_threshold) unmet.insert("loneliness");
  if (n.bladder > m.bladder_threshold) unmet.insert("bladder");
  return unmet;
}

inline bool is_optimal(const NeedsState& n, const NeedsModel& m) {
  return unmet_needs(n, m).empty();
}

inline bool is_restorative_verb(const std::string& verb) {
  return verb == "eat" || verb == "drink" || verb == "rest" ||
         verb == "use_restroom" || verb == "stay_chat";
}

inline NeedsState apply_restoration(const NeedsState& n, const std::string& verb,
                                    const NeedsModel& m) {
  if (!is_restorative_verb(verb))
    throw std::invalid_argument("apply_restoration: non-restorative verb " + verb);
  NeedsState out = n;
  if (verb == "eat") {
    out.fullness = clamp_need(n.fullness + m.eat_restore);
  } else if (verb == "drink") {
    out.hydration = clamp_need(n.hydration + m.drink_restore);
    out.bladder = clamp_need(n.bladder + m.drink_bladder);
  } else if (verb == "rest") {
    out.energy = clamp_need(n.energy + m.rest_restore);
  } else if (verb == "use_restroom") {
    out.bladder = 0.0;
  } else if (verb == "stay_chat") {
    out.social_fulfillment = clamp_need(n.social_fulfillment + m.chat_restore);
  }
  return out;
}

}  // namespace indoorsim
