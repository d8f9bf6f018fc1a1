#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cdp {

using NodeId = int;

enum class NodeKind : uint8_t { PP, PA, Act, State, StateChange, ConceptRef };

enum class LinkKind : uint8_t {
  Conceptualization, // two-way actor<->ACT / subject<->STATE(-CHANGE)
  Attributive,       // PP<->PA or PP<->PP ("is")
  Modifier,          // PP->PA / PP->PP qualifier
  Object,            // ACT ->o PP
  RecipientFrom,     // ACT ->R source PP (paired with RecipientTo)
  RecipientTo,
  Instrument,        // ACT ->I instrumental conceptualization
  DirectionFrom,     // ACT/STATE-CHANGE ->D endpoints
  DirectionTo,
  Cause,             // conceptualization => conceptualization / state(-change)
  Enable,            // like Cause but the barred (enablement) reading
  Temporal,          // sequencing between conceptualizations
  Elaboration,       // symbol -> root of its defining subgraph
  Anchor             // node -> scene entity reference node
};

/// Tense / status markers carried by links. A subset may be combined.
enum Mod : uint8_t {
  ModPast = 1 << 0,
  ModFuture = 1 << 1,
  ModConditional = 1 << 2,
  ModConditionalFuture = 1 << 3,
  ModIntended = 1 << 4,
  ModIntendedUnknown = 1 << 5,
  ModNegated = 1 << 6,
  ModProbable = 1 << 7
};
using ModFlags = uint8_t;

std::string mods_to_string(ModFlags mods);

/// What a node bottoms out at, if anything.
struct Grounding {
  enum Kind { None, Symbol, AnchorRef, ElabRef };
  Kind kind = None;
  std::string name; // ground-concept symbol / scene body id / concept name
  bool operator==(const Grounding&) const = default;
};

struct Node {
  NodeId id = -1;
  NodeKind kind = NodeKind::PP;
  std::string label;
  std::map<std::string, std::string> attrs;
  Grounding ground;

  bool is_variable() const { return !label.empty() && label[0] == '?'; }
};

struct Link {
  NodeId from = -1, to = -1;
  LinkKind kind = LinkKind::Conceptualization;
  ModFlags mods = 0;
};

struct ValidationIssue {
  enum Severity { ErrorIssue, WarningIssue };
  Severity severity;
  std::string rule; // catalog id, e.g. "rule-6", "ext-anchor"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const {
    for (auto& i : issues)
      if (i.severity == ValidationIssue::ErrorIssue) return false;
    return true;
  }
  std::vector<std::string> errors() const;
  std::vector<std::string> warnings() const;
};

/// An immutable-after-validation CD+ graph. Node ids are indices into nodes;
/// structural operations never depend on their numeric values.
struct ConceptGraph {
  std::string name;
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<NodeId> roots;

  NodeId add_node(NodeKind kind, std::string label);
  void add_link(NodeId from, NodeId to, LinkKind kind, ModFlags mods = 0);
  const Node& node(NodeId id) const { return nodes.at(static_cast<size_t>(id)); }
  Node& node(NodeId id) { return nodes.at(static_cast<size_t>(id)); }

  /// Labels of all variable nodes ("?..."), sorted.
  std::vector<std::string> variables() const;

  /// Links touching a node, in declaration order.
  std::vector<const Link*> links_at(NodeId id) const;
  /// First link of a kind leaving `from`, or nullptr.
  const Link* out_link(NodeId from, LinkKind kind) const;
  /// First neighbor over a Conceptualization link, or -1.
  NodeId conceptualization_peer(NodeId id) const;
};

/// One named event inside a script scene.
struct ScriptEvent {
  std::string name;
  ConceptGraph graph;
};

/// An ordered stage of a script: events plus a partial order over them.
/// Multiple in/out edges per event are allowed (AND-OR branching).
struct ScriptScene {
  std::string name;
  std::vector<ScriptEvent> events;
  std::vector<std::pair<std::string, std::string>> order; // before -> after
};

/// A stereotyped event structure. When `may_events` is set the script is a
/// may-event collection: a single unordered pool with no order edges.
struct Script {
  std::string name;
  bool may_events = false;
  std::vector<std::string> props;
  std::vector<std::string> roles;
  std::vector<ConceptGraph> entry_conditions;
  std::vector<ConceptGraph> results;
  std::vector<ScriptScene> scenes;

  const ScriptEvent* find_event(const std::string& name) const;
};

/// Checks event-name references and acyclicity of each scene's order
/// relation; may-event scripts must not carry order edges.
std::vector<std::string> check_script(const Script& s);

/// The 11 classic primitive ACTs; these need no elaboration.
bool is_primitive_act(const std::string& label);
/// ACTs that are themselves ground or near-ground vocabulary (directly
/// executable / simulable), hence exempt from the elaboration warning.
bool is_ground_act(const std::string& label);

/// Checks every link against the construction-rule catalog. Rule violations
/// are errors; vocabulary gaps (unelaborated non-primitive ACTs, odd modifier
/// combinations) are warnings.
ValidationReport validate(const ConceptGraph& g);

/// True when a node may serve as a cause/enable endpoint (it heads a
/// conceptualization: an ACT, a STATE, a STATE-CHANGE or a reference).
bool is_conceptualization_head(const ConceptGraph& g, NodeId id);

/// Structural equality ignoring node ids and declaration order.
bool graphs_equal(const ConceptGraph& a, const ConceptGraph& b);

std::string kind_name(NodeKind k);
std::string link_kind_name(LinkKind k);

} // namespace cdp
