#pragma once

#include <string>
#include <vector>

#include "cdplus/config.hpp"
#include "cdplus/dsl.hpp"
#include "cdplus/graph.hpp"
#include "cdplus/reasoner.hpp"
#include "cdplus/scene.hpp"
#include "cdplus/sexpr.hpp"

namespace cdp {

/// When an episode happened relative to the experiential "now".
enum class Tense { Past, Present, Future, Hypothetical };

std::string tense_name(Tense t);
Tense tense_from_string(const std::string& s);

/// One remembered event: a validated graph stamped with its place on the
/// time axis. Hypotheticals and futures both live ahead of the cursor,
/// distinguished by the conditional modifier on the stored graph.
struct Episode {
  int id = 0;
  int tick = 0;
  Tense tense = Tense::Present;
  bool internal = false;    // reasoning event rather than a percept
  double probability = 1.0; // < 1 marks a "may" episode
  ConceptGraph graph;
};

/// Episodic store split along the time axis.
struct ExperientialCore {
  std::vector<Episode> episodes; // tick order
  int next_id = 1;
  int next_tick = 1;

  std::vector<const Episode*> retro() const;       // strictly before now
  std::vector<const Episode*> present() const;     // the cursor
  std::vector<const Episode*> prospective() const; // future + hypothetical
  const Episode* find(int id) const;
};

/// One node of the goal tree. parent < 0 marks a primary goal.
struct GoalNode {
  int id = 0;
  std::string name;
  int parent = -1;
  ConceptGraph graph; // goal CAUSES Pleased(agent); empty for primaries
};

struct MotivationCore {
  std::vector<GoalNode> goals;
  int next_id = 1;

  const GoalNode* find(int id) const;
  const GoalNode* find(const std::string& name) const;
};

struct CanResult {
  bool ok = false;
  PlanResult outcome; // the plan, or the frontier that blocked it
};

/// The agent's stores plus the meta-functional operations over them.
class AgentMind {
 public:
  explicit AgentMind(const Config& cfg = Config::defaults());

  ExperientialCore expc;
  MotivationCore motc;
  std::vector<ConceptGraph> reac; // working buffer

  /// Stores the graph in the region its tense selects, stamping the matching
  /// tense modifier when absent; the storing act itself is logged as one
  /// internal episode. Returns the new episode's id.
  int assert_episode(const ConceptGraph& g, Tense t, double probability = 1.0);

  /// Registers "satisfying this goal pleases the agent" under `parent`
  /// (a goal name; "" = the configured default primary goal). Makes no
  /// attempt to check achievability. Idempotent per (agent, goal).
  int want(const std::string& agent, const ConceptGraph& goal,
           const std::string& parent = "");

  /// True iff a plan for the goal exists in the scene. The deliberation
  /// protocol (pose the want, hand it to the solver, plan, take the answer
  /// back) is logged as four internal episodes.
  CanResult can(const std::string& agent, const ConceptGraph& goal, const Scene& s,
                const std::vector<FunctionDefinition>& kb = {});

  /// Counterfactual reading of enablement: the consequence is achievable as
  /// the scene stands, and stops being achievable once the state is undone.
  bool enable_holds(const ConceptGraph& state, const ConceptGraph& consequence,
                    const Scene& s, const std::vector<FunctionDefinition>& kb = {});

  /// Runs a removal experiment and commits its protocol to the episode log.
  ExperimentResult experiment(const Scene& s, const std::string& part);

 private:
  Config cfg_;
  int log_internal(const ConceptGraph& g);
};

/// Store persistence: `(expc ...)` / `(motc ...)` forms.
SExpr expc_to_sexpr(const ExperientialCore& e);
ExperientialCore expc_from_sexpr(const SExpr& form);
SExpr motc_to_sexpr(const MotivationCore& m);
MotivationCore motc_from_sexpr(const SExpr& form);

/// A working set: loaded documents plus the agent's stores. Lookups scan
/// documents in load order and return the first hit.
struct Session {
  std::vector<SourceDocument> docs;
  AgentMind mind;

  const Scene* find_scene(const std::string& name) const;
  const FunctionDefinition* find_function(const std::string& name) const;
  const ConceptGraph* find_concept(const std::string& name) const;
  const QualChain* find_chain(const std::string& name) const;
  const BodyDecl* find_body(const std::string& name) const;

  /// Canonical text: documents in canonical print, then the two stores.
  /// save(load(save(s))) is byte-identical.
  std::string save_text() const;
};

Session session_from_text(const std::string& text, const std::string& origin = "");
Session load_session_file(const std::string& path);
void save_session_file(const Session& s, const std::string& path);

} // namespace cdp
