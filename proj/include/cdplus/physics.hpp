#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdplus/body.hpp"
#include "cdplus/config.hpp"
#include "cdplus/graph.hpp"
#include "cdplus/scene.hpp"

namespace cdp {

/// Qualitative, quasi-static physical reasoning: stability verdicts,
/// settle simulation (fall / rotate-fall cascades), crushing, piercing,
/// joint tension and limb reachability. No velocities, no friction;
/// only level faces transmit support, and a body held up solely by
/// slanted contacts is left where it is, flagged as wedged.

enum class EventKind {
  Stay,          // confirmed in place
  StayP,         // posture confirmed unchanged
  FallToGround,  // vertical drop until first contact
  RotateFall,    // tips about a support edge until something stops it
  Topple,        // a seat assembly rotate-falls
  Crush,         // target squashed to a fraction of its height
  Indent,        // a dent recorded on the target
  NoEffect,      // attempted action, preconditions unmet
};

std::string event_kind_name(EventKind k);

struct PhysEvent {
  EventKind kind = EventKind::Stay;
  std::string subject;                 // lead body id
  std::vector<std::string> assembly;   // every body that moved, sorted
  int direction = 0;                   // RotateFall: -1 left, +1 right
  Vec2 from{0, 0}, to{0, 0};           // composite CM before / after
  std::string note;                    // short cause, e.g. "unsupported"
};

/// Ordered event list plus the scene everything came to rest in.
struct Trace {
  std::vector<PhysEvent> events;
  Scene final;
};

struct Stability {
  enum Kind { Stable, RotateFall, Unsupported };
  Kind kind = Stable;
  int direction = 0;     // RotateFall: -1 or +1
  bool marginal = false; // CM on the support boundary; kept Stable
  double cm_x = 0;
  std::optional<Interval> support;
};

/// Verdict for one assembly: the composite CM's vertical line must pass
/// inside the hull of its level supports.
Stability stability(const Scene& s, const std::vector<std::string>& assembly,
                    const Config& cfg = Config::defaults());

/// Runs events in deterministic order (attachment components, sorted by
/// lead id) until a fixpoint: unsupported pieces drop straight down,
/// unbalanced ones tip about the violated support edge. Throws Diverged
/// past cfg.settle_max_events.
Trace settle(const Scene& s, const Config& cfg = Config::defaults());

/// Pressing `tool` down onto `target` with the given force. Squashes the
/// target's height when the tool is strictly harder and force + tool
/// weight beat the target's resistance; otherwise NoEffect.
Trace crush(const Scene& s, const std::string& tool, const std::string& target,
            Ord force, const Config& cfg = Config::defaults());

/// Striking `target` with one end of `tool` (contact_end: "Sharp" or
/// "Blunt"). A rapid, forceful hit with the sharp end of a tool at least
/// as hard as the target dents it (profile = tool id); anything else is
/// NoEffect. Throws NotOriented when the sharp end faces away.
Trace pierce(const Scene& s, const std::string& tool, const std::string& contact_end,
             const std::string& target, bool rapid = true, bool forceful = true,
             const Config& cfg = Config::defaults());

enum class Comfort { Comfortable, ReasonablyComfortable, NotComfortable };

std::string comfort_name(Comfort c); // COMF / R-COMF / NOT-COMF

struct JointReport {
  std::map<std::string, JointState> joints; // BJ1..BJ4
  int tensed = 0;
  Comfort comfort = Comfort::NotComfortable;
};

/// Tensed/relaxed state of each joint given the figure's achieved
/// contacts: supported segments let their joints go slack. Comfort
/// counts tensed joints: <=1 comfortable, 2 reasonable, >=3 not.
JointReport joint_states(const BodyModel& body, const Scene& s,
                         const Config& cfg = Config::defaults());

/// True when the lower leg can swing from the current knee angle to the
/// target posture's without passing through scene bodies or the ground.
/// The figure's own parts, the seat and "Legs"-tagged skeleton parts
/// (side-view depth exemption) don't block.
bool reachable(const BodyModel& seated, const std::string& target_posture,
               const Scene& s, const Config& cfg = Config::defaults());

enum class ChairStability { Stable, Topple };

std::string chair_stability_name(ChairStability c);

/// Seats the figure in `posture`, merges it with the chair assembly and
/// asks stability() about the whole; hand-on-table contacts widen the
/// support hull. RotateFall maps to Topple.
ChairStability person_chair_stability(const Scene& s,
                                      const std::vector<std::string>& chair,
                                      const BodyModel& body, const std::string& posture,
                                      const Config& cfg = Config::defaults());

/// The trace as a concept graph: one StateChange per event, linked in
/// temporal order, each naming its subject.
ConceptGraph trace_graph(const Trace& t);

} // namespace cdp
