#pragma once

#include <map>
#include <string>
#include <vector>

#include "cdplus/body.hpp"
#include "cdplus/config.hpp"
#include "cdplus/graph.hpp"
#include "cdplus/kb.hpp"
#include "cdplus/physics.hpp"
#include "cdplus/scene.hpp"

namespace cdp {

/// ---- Function recognition -------------------------------------------------

/// One way a scene realizes a function: an assignment of the definition's
/// variables to scene entities, plus one line per check that passed.
struct Recognition {
  std::map<std::string, std::string> bindings; // "?a" -> body/marker id
  std::vector<std::string> justification;
};

/// Enumerates variable assignments under which every declared condition
/// holds AND the configuration survives simulation (the participants rest
/// in place when the scene settles). Sorted by binding for determinism.
/// `seed` pins some variables in advance; empty list = not recognized.
std::vector<Recognition> recognize(const Scene& s, const FunctionDefinition& def,
                                   const Config& cfg = Config::defaults());
std::vector<Recognition> recognize(const Scene& s, const FunctionDefinition& def,
                                   const std::map<std::string, std::string>& seed,
                                   const Config& cfg = Config::defaults());

/// ---- Mental experiments ---------------------------------------------------

/// Outcome of imagining a part away: what was removed, what the simulation
/// did about it, and the rule graph this licenses. The protocol log records
/// the experiment itself as a sequence of internal mental operations.
struct ExperimentResult {
  std::string part;                  // the part (or tag) asked about
  std::vector<std::string> removed;  // body ids actually removed
  Trace trace;                       // aftermath of settling without them
  ConceptGraph derived;              // "had it not existed ..." rule
  std::vector<ConceptGraph> protocol; // internal operation log, in order
  std::string person_posture;        // posture after ("" = no person involved)
  bool changed = false;              // anything moved (or the person fell)
};

/// Removes `part` (a body id, or a tag naming several bodies), settles the
/// rest, and derives the counterfactual rule. Throws UnknownPart when the
/// name matches nothing.
ExperimentResult mental_experiment(const Scene& s, const std::string& part,
                                   const Config& cfg = Config::defaults());

/// Same, with a seated/standing person in the scene: the person's posture is
/// re-derived against the settled scene and any change joins the rule graph.
ExperimentResult mental_experiment(const Scene& s, const std::string& part,
                                   const BodyModel& person,
                                   const Config& cfg = Config::defaults());

/// ---- Structure causals ----------------------------------------------------

/// What one part contributes: the enable chain its presence sustains, and
/// the counterfactual rule from the removal experiment.
struct StructureCausal {
  std::string part;
  ConceptGraph fact;           // presence enables the dependents' rest
  ConceptGraph counterfactual; // removal consequences
  Trace trace;
  std::string person_posture;  // posture after removal ("" = no person)
  bool consequential = false;  // removal actually disturbed something
};

/// Runs the removal experiment for each part (empty = every movable body,
/// sorted) and packages the rule pairs.
std::vector<StructureCausal> derive_structure_causals(
    const Scene& s, const std::vector<std::string>& parts = {},
    const Config& cfg = Config::defaults());
std::vector<StructureCausal> derive_structure_causals(
    const Scene& s, const BodyModel& person, const std::vector<std::string>& parts = {},
    const Config& cfg = Config::defaults());

/// ---- Functional segmentation ----------------------------------------------

/// Functions a region can be segmented against. Each is a named predicate
/// over the whole scene, evaluated with a standard person.
std::vector<std::string> segmentation_functions();
bool function_holds(const Scene& s, const std::string& function_name,
                    const Config& cfg = Config::defaults());

/// A maximal single-function region within one material continuum.
struct Segmentation {
  std::vector<std::string> region; // body ids, sorted
  std::string function;            // the function the region serves
  int steps = 0;                   // accepted growth steps beyond the seed
  std::vector<std::string> blocked_by; // "body (function)" growth rejections
};

/// Grows a region from `seed_body` along same-material attachments: a
/// neighbour joins while the enlarged region is still indispensable for
/// `function_name` and the neighbour is not itself indispensable for a
/// different function. Throws UnknownPart for a missing seed and
/// OutOfMaterial when the seed does not serve the function at all.
Segmentation functional_segmentation(const Scene& s, const std::string& function_name,
                                     const std::string& seed_body,
                                     const Config& cfg = Config::defaults());

/// ---- Goodness-of-chair ----------------------------------------------------

struct PostureReport {
  std::string posture;
  bool realizable = false;
  std::string reason;  // why not, when unrealizable
  Comfort comfort = Comfort::NotComfortable;
  ChairStability stability = ChairStability::Stable;
};

struct GoodnessReport {
  std::string scene;
  std::string person;
  std::vector<std::string> assembly;
  std::vector<PostureReport> postures; // the full seated repertoire, in order
  bool change_possible = false; // a prolonged stay can move to another posture
  bool good = false;
  std::vector<std::string> failures; // itemized reasons when not good
};

/// Evaluates the seated repertoire on the assembly: realizability, comfort,
/// whole-system stability, and lower-leg repositioning room. An empty
/// assembly means the attachment component of the highest seat surface.
GoodnessReport evaluate_chair(const Scene& s, const std::vector<std::string>& assembly,
                              const BodyModel& person,
                              const Config& cfg = Config::defaults());

/// Fixed-format text rendering (golden-file stable).
std::string render_report(const GoodnessReport& r);

/// ---- Planning ---------------------------------------------------------------

struct PlanStep {
  std::string action;             // executable action name
  std::vector<std::string> args;  // entity arguments
  ConceptGraph graph;             // the instantiated action concept
};

struct PlanResult {
  bool solved = false;
  std::vector<PlanStep> steps;
  std::vector<std::string> frontier; // unsatisfiable subgoals when unsolved
  Scene final;                       // scene after forward replay
  std::vector<std::string> log;      // search narration, deterministic
};

/// True when the goal pattern already holds in the scene (geometrically for
/// grounded states, by pattern match against the scene's trace otherwise).
bool goal_holds(const Scene& s, const ConceptGraph& goal,
                const Config& cfg = Config::defaults());

/// Backward-chains from the goal over the definitions' cause/enable links
/// down to executable actions, then replays the candidate forward through
/// the simulator. Deterministic: definitions in declaration order, entities
/// in sorted order, depth capped by cfg.plan_depth_max.
PlanResult plan(const Scene& s, const ConceptGraph& goal,
                const std::vector<FunctionDefinition>& kb = {},
                const Config& cfg = Config::defaults());

/// ---- Qualitative chain propagation ----------------------------------------

struct StageState {
  std::string stage;
  std::map<std::string, Trend> vars; // all Null when the stage is starved
  bool reached = true;
};

struct Propagation {
  std::vector<StageState> stages; // declaration order
  bool terminal_ok = true;        // last declared stage still reached
  std::string first_break;        // "from->to" of the first clamped edge hit
  std::vector<std::string> broken; // starved stages, declaration order
  ConceptGraph conclusion;        // the terminal effect, asserted or negated
};

/// Propagates reachability through the chain. A clamped edge starves its
/// target stage and everything downstream of it; an unclamped feedback loop
/// transmits nothing at steady state. Throws CyclicChain for cycles among
/// non-loop edges and UnknownSymbol for clamps naming undeclared edges.
Propagation propagate(const QualChain& c,
                      const std::vector<std::pair<std::string, std::string>>& clamps = {},
                      const Config& cfg = Config::defaults());

} // namespace cdp
