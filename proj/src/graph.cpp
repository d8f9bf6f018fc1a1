#include "cdplus/graph.hpp"

#include <algorithm>
#include <array>

#include "cdplus/match.hpp"

namespace cdp {

std::string mods_to_string(ModFlags mods) {
  static const std::array<std::pair<Mod, const char*>, 8> table{{
      {ModPast, "p"}, {ModFuture, "f"}, {ModConditional, "c"},
      {ModConditionalFuture, "cf"}, {ModIntended, "i"}, {ModIntendedUnknown, "i?"},
      {ModNegated, "not"}, {ModProbable, "may"}}};
  std::string out;
  for (auto& [m, s] : table)
    if (mods & m) {
      if (!out.empty()) out += ",";
      out += s;
    }
  return out;
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (auto& i : issues)
    if (i.severity == ValidationIssue::ErrorIssue) out.push_back(i.rule + ": " + i.message);
  return out;
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (auto& i : issues)
    if (i.severity == ValidationIssue::WarningIssue) out.push_back(i.rule + ": " + i.message);
  return out;
}

NodeId ConceptGraph::add_node(NodeKind kind, std::string label) {
  Node n;
  n.id = static_cast<NodeId>(nodes.size());
  n.kind = kind;
  n.label = std::move(label);
  nodes.push_back(std::move(n));
  return nodes.back().id;
}

void ConceptGraph::add_link(NodeId from, NodeId to, LinkKind kind, ModFlags mods) {
  links.push_back(Link{from, to, kind, mods});
}

std::vector<std::string> ConceptGraph::variables() const {
  std::set<std::string> s;
  for (auto& n : nodes)
    if (n.is_variable()) s.insert(n.label);
  return {s.begin(), s.end()};
}

std::vector<const Link*> ConceptGraph::links_at(NodeId id) const {
  std::vector<const Link*> out;
  for (auto& l : links)
    if (l.from == id || l.to == id) out.push_back(&l);
  return out;
}

const Link* ConceptGraph::out_link(NodeId from, LinkKind kind) const {
  for (auto& l : links)
    if (l.from == from && l.kind == kind) return &l;
  return nullptr;
}

NodeId ConceptGraph::conceptualization_peer(NodeId id) const {
  for (auto& l : links)
    if (l.kind == LinkKind::Conceptualization) {
      if (l.from == id) return l.to;
      if (l.to == id) return l.from;
    }
  return -1;
}

bool is_primitive_act(const std::string& label) {
  static const std::set<std::string> prims{
      "ATRANS", "PTRANS", "PROPEL", "MOVE", "GRASP", "INGEST",
      "EXPEL", "MTRANS", "MBUILD", "SPEAK", "ATTEND"};
  return prims.count(label) > 0;
}

bool is_ground_act(const std::string& label) {
  static const std::set<std::string> ground{
      "PTRANS", "PROTATE", "BPTRANS", "EXTRANS", "UNTIL", "MTRANS", "MBUILD",
      "MOVE", "Look-At", "Move-Toward", "Move-Away", "Orient-Toward", "Orient-Away",
      "MEXPAND", "MCONTRACT", "MEXTEND", "MEXTRUDE", "MINDENT",
      "Turn-Body", "Lift-Left-Thigh", "Lift-Right-Thigh", "Swing-Left-Leg",
      "Swing-Right-Leg", "Lift-Left-Arm", "Lift-Right-Arm", "Grasp",
      "Spread-Fingers", "Point-Finger"};
  return ground.count(label) > 0;
}

bool is_conceptualization_head(const ConceptGraph& g, NodeId id) {
  const Node& n = g.node(id);
  switch (n.kind) {
    case NodeKind::Act:
    case NodeKind::State:
    case NodeKind::StateChange:
    case NodeKind::ConceptRef:
      return true;
    default:
      return false;
  }
}

namespace {

struct Checker {
  const ConceptGraph& g;
  ValidationReport rep;

  void error(const std::string& rule, const std::string& msg) {
    rep.issues.push_back({ValidationIssue::ErrorIssue, rule, msg});
  }
  void warn(const std::string& rule, const std::string& msg) {
    rep.issues.push_back({ValidationIssue::WarningIssue, rule, msg});
  }

  std::string describe(NodeId id) const {
    const Node& n = g.node(id);
    return kind_name(n.kind) + "(" + n.label + ")";
  }

  bool kind_is(NodeId id, NodeKind k) const { return g.node(id).kind == k; }

  void check_link(const Link& l) {
    if (l.from < 0 || l.to < 0 || l.from >= static_cast<NodeId>(g.nodes.size()) ||
        l.to >= static_cast<NodeId>(g.nodes.size())) {
      error("link", "link endpoint out of range");
      return;
    }
    const std::string ends = describe(l.from) + " -> " + describe(l.to);
    switch (l.kind) {
      case LinkKind::Conceptualization:
        // rule 1 (actor<->ACT) and the attributive/state readings (rule 2/3):
        // one end must be a PP (or PP variable), the other an ACT, STATE or
        // STATE-CHANGE it heads.
        if (!((kind_is(l.from, NodeKind::PP) &&
               (kind_is(l.to, NodeKind::Act) || kind_is(l.to, NodeKind::State) ||
                kind_is(l.to, NodeKind::StateChange))) ||
              (kind_is(l.to, NodeKind::PP) &&
               (kind_is(l.from, NodeKind::Act) || kind_is(l.from, NodeKind::State) ||
                kind_is(l.from, NodeKind::StateChange)))))
          error("rule-1", "two-way link must join a PP with an ACT or STATE: " + ends);
        break;
      case LinkKind::Attributive:
        if (!(kind_is(l.from, NodeKind::PP) &&
              (kind_is(l.to, NodeKind::PA) || kind_is(l.to, NodeKind::PP))))
          error("rule-2", "attributive link must join PP with PA or PP: " + ends);
        break;
      case LinkKind::Modifier:
        if (!(kind_is(l.from, NodeKind::PP) &&
              (kind_is(l.to, NodeKind::PA) || kind_is(l.to, NodeKind::PP))))
          error("rule-4", "modifier link must qualify a PP with a PA or PP: " + ends);
        break;
      case LinkKind::Object:
        if (!(kind_is(l.from, NodeKind::Act) && kind_is(l.to, NodeKind::PP)))
          error("rule-6", "objective link must run ACT -> PP: " + ends);
        break;
      case LinkKind::RecipientFrom:
      case LinkKind::RecipientTo:
        if (!(kind_is(l.from, NodeKind::Act) && kind_is(l.to, NodeKind::PP)))
          error("rule-7", "recipient link must run ACT -> PP: " + ends);
        break;
      case LinkKind::Instrument:
        if (!kind_is(l.from, NodeKind::Act))
          error("rule-8", "instrument link must leave an ACT: " + ends);
        else if (!(kind_is(l.to, NodeKind::Act) || kind_is(l.to, NodeKind::ConceptRef) ||
                   kind_is(l.to, NodeKind::PP)))
          error("rule-8", "instrument must be a conceptualization or PP: " + ends);
        break;
      case LinkKind::DirectionFrom:
      case LinkKind::DirectionTo:
        if (!((kind_is(l.from, NodeKind::Act) || kind_is(l.from, NodeKind::StateChange)) &&
              (kind_is(l.to, NodeKind::PP) || kind_is(l.to, NodeKind::PA))))
          error("rule-9", "directive link must run ACT/STATE-CHANGE -> PP/PA: " + ends);
        break;
      case LinkKind::Cause:
      case LinkKind::Enable: {
        const char* rule = l.kind == LinkKind::Cause ? "rule-10" : "ext-enable";
        if (!is_conceptualization_head(g, l.from))
          error(rule, "cause source must be a conceptualization, not " + describe(l.from));
        if (!is_conceptualization_head(g, l.to))
          error(rule, "cause target must be a conceptualization or state, not " + describe(l.to));
        break;
      }
      case LinkKind::Temporal:
        if (!is_conceptualization_head(g, l.from) || !is_conceptualization_head(g, l.to))
          error("ext-temporal", "temporal link must join conceptualizations: " + ends);
        break;
      case LinkKind::Elaboration:
        if (!(kind_is(l.from, NodeKind::Act) || kind_is(l.from, NodeKind::PP) ||
              kind_is(l.from, NodeKind::State)))
          error("ext-elaboration", "only ACT/PP/STATE nodes take elaborations: " + ends);
        break;
      case LinkKind::Anchor:
        if (!kind_is(l.to, NodeKind::PP))
          error("ext-anchor", "anchor target must be a scene-entity PP: " + ends);
        break;
    }
    check_mods(l);
  }

  void check_mods(const Link& l) {
    ModFlags m = l.mods;
    if ((m & ModPast) && (m & ModFuture))
      warn("mods", "link carries both past and future marks");
    if ((m & ModConditional) && (m & ModConditionalFuture))
      warn("mods", "link carries both c and cf marks");
    if ((m & ModIntended) && (m & ModIntendedUnknown))
      warn("mods", "link carries both i and i? marks");
    bool causal = l.kind == LinkKind::Cause || l.kind == LinkKind::Enable;
    if ((m & (ModIntended | ModIntendedUnknown)) && !causal)
      warn("mods", "intention marks belong on causal links");
  }

  void check_recipient_pairs() {
    for (auto& n : g.nodes) {
      if (n.kind != NodeKind::Act) continue;
      int from = 0, to = 0;
      for (auto& l : g.links) {
        if (l.from != n.id) continue;
        if (l.kind == LinkKind::RecipientFrom) from++;
        if (l.kind == LinkKind::RecipientTo) to++;
      }
      if (from != to)
        error("rule-7", "recipient links on " + n.label + " must pair FROM with TO");
    }
  }

  void check_state_changes() {
    for (auto& n : g.nodes) {
      if (n.kind != NodeKind::StateChange) continue;
      bool from = false, to = false;
      for (auto& l : g.links) {
        if (l.from != n.id) continue;
        if (l.kind == LinkKind::DirectionFrom) from = true;
        if (l.kind == LinkKind::DirectionTo) to = true;
      }
      if (!from || !to)
        error("rule-9", "state change " + n.label + " needs both a FROM and a TO value");
    }
  }

  void check_act_vocabulary() {
    for (auto& n : g.nodes) {
      if (n.kind != NodeKind::Act || n.is_variable()) continue;
      if (is_primitive_act(n.label) || is_ground_act(n.label)) continue;
      bool elaborated = n.ground.kind == Grounding::ElabRef;
      for (auto& l : g.links)
        if (l.from == n.id && l.kind == LinkKind::Elaboration) elaborated = true;
      if (!elaborated)
        warn("vocabulary", "non-primitive ACT '" + n.label + "' has no elaboration");
    }
  }

  void check_elaboration_cycles() {
    // intra-graph elaboration links must not cycle
    std::vector<int> color(g.nodes.size(), 0);
    auto dfs = [&](auto&& self, NodeId v) -> bool {
      color[static_cast<size_t>(v)] = 1;
      for (auto& l : g.links)
        if (l.from == v && l.kind == LinkKind::Elaboration) {
          if (color[static_cast<size_t>(l.to)] == 1) return false;
          if (color[static_cast<size_t>(l.to)] == 0 && !self(self, l.to)) return false;
        }
      color[static_cast<size_t>(v)] = 2;
      return true;
    };
    for (auto& n : g.nodes)
      if (color[static_cast<size_t>(n.id)] == 0 && !dfs(dfs, n.id)) {
        error("ext-elaboration", "elaboration links form a cycle");
        return;
      }
  }
};

} // namespace

ValidationReport validate(const ConceptGraph& g) {
  Checker c{g, {}};
  for (auto& l : g.links) c.check_link(l);
  c.check_recipient_pairs();
  c.check_state_changes();
  c.check_act_vocabulary();
  c.check_elaboration_cycles();
  return c.rep;
}

bool graphs_equal(const ConceptGraph& a, const ConceptGraph& b) {
  if (a.nodes.size() != b.nodes.size() || a.links.size() != b.links.size()) return false;
  if (a.nodes.empty()) return true;
  return embeds(a, b) && embeds(b, a);
}

std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::PP: return "PP";
    case NodeKind::PA: return "PA";
    case NodeKind::Act: return "ACT";
    case NodeKind::State: return "STATE";
    case NodeKind::StateChange: return "STATE-CHANGE";
    case NodeKind::ConceptRef: return "REF";
  }
  return "?";
}

const ScriptEvent* Script::find_event(const std::string& name) const {
  for (auto& sc : scenes)
    for (auto& e : sc.events)
      if (e.name == name) return &e;
  return nullptr;
}

std::vector<std::string> check_script(const Script& s) {
  std::vector<std::string> errs;
  for (auto& sc : s.scenes) {
    if (s.may_events && !sc.order.empty())
      errs.push_back("may-event script '" + s.name + "' carries order edges");
    std::map<std::string, std::vector<std::string>> next;
    std::map<std::string, int> indeg;
    for (auto& e : sc.events) indeg[e.name] = 0;
    for (auto& [a, b] : sc.order) {
      if (!indeg.count(a) || !indeg.count(b)) {
        errs.push_back("order edge " + a + " -> " + b + " names an unknown event");
        continue;
      }
      next[a].push_back(b);
      indeg[b]++;
    }
    // Kahn peel; leftovers form a cycle
    std::vector<std::string> q;
    for (auto& [n, d] : indeg)
      if (d == 0) q.push_back(n);
    size_t seen = 0;
    while (!q.empty()) {
      auto n = q.back();
      q.pop_back();
      seen++;
      for (auto& m : next[n])
        if (--indeg[m] == 0) q.push_back(m);
    }
    if (seen != indeg.size())
      errs.push_back("scene '" + sc.name + "' order relation is cyclic");
  }
  return errs;
}

std::string link_kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::Conceptualization: return "conc";
    case LinkKind::Attributive: return "attr";
    case LinkKind::Modifier: return "mod";
    case LinkKind::Object: return "obj";
    case LinkKind::RecipientFrom: return "recip-from";
    case LinkKind::RecipientTo: return "recip-to";
    case LinkKind::Instrument: return "instr";
    case LinkKind::DirectionFrom: return "dir-from";
    case LinkKind::DirectionTo: return "dir-to";
    case LinkKind::Cause: return "cause";
    case LinkKind::Enable: return "enable";
    case LinkKind::Temporal: return "then";
    case LinkKind::Elaboration: return "elab";
    case LinkKind::Anchor: return "anchor";
  }
  return "?";
}

} // namespace cdp
