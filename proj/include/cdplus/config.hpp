#pragma once

#include <string>

namespace cdp {

/// Engine-wide tolerances and limits. All geometric quantities are in scene
/// units unless a _mult suffix marks them as multiples of an object diagonal.
struct Config {
  double contact_eps = 1e-6;     // max gap that still counts as touching
  double near_mult = 1.0;        // Near(a,b): gap <= near_mult * mean diagonal
  double far_mult = 5.0;         // Far(a,b): gap >= far_mult * mean diagonal
  double angle_tol_deg = 5.0;    // level / parallel / vertical classification
  int time_long_ticks = 100;     // Time(Long) in simulation ticks
  int plan_depth_max = 12;       // backward-chaining recursion cap
  double may_prob = 0.5;         // probability attached to "may"-tagged episodes
  int settle_max_events = 10000; // settle() divergence guard
  int sweep_samples = 64;        // samples along a swept limb arc
  std::string default_primary_goal = "Competence";

  static const Config& defaults();
};

/// Loads overrides from the file named by the FUNCREP_CONFIG environment
/// variable, if set. Unknown keys are an error; absent variable means defaults.
Config load_config_from_env();

/// Parses a config document (a single (config (key value)...) form).
Config parse_config(const std::string& text, const std::string& origin);

} // namespace cdp
