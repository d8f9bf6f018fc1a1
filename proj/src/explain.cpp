#include "cdplus/explain.hpp"

#include <map>
#include <sstream>

namespace cdp {

namespace {

struct VerbForms {
  std::string base, third, past;
};

const VerbForms& verb_for(const std::string& act) {
  static const std::map<std::string, VerbForms> lex{
      {"PTRANS", {"move", "moves", "moved"}},
      {"PROTATE", {"rotate", "rotates", "rotated"}},
      {"BPTRANS", {"shift posture", "shifts posture", "shifted posture"}},
      {"ATRANS", {"transfer possession of", "transfers possession of",
                  "transferred possession of"}},
      {"MTRANS", {"bring to mind", "brings to mind", "brought to mind"}},
      {"MBUILD", {"conclude", "concludes", "concluded"}},
      {"INGEST", {"ingest", "ingests", "ingested"}},
      {"EXPEL", {"expel", "expels", "expelled"}},
      {"PROPEL", {"propel", "propels", "propelled"}},
      {"MOVE", {"move", "moves", "moved"}},
      {"GRASP", {"grasp", "grasps", "grasped"}},
      {"Grasp", {"grasp", "grasps", "grasped"}},
      {"SPEAK", {"speak", "speaks", "spoke"}},
      {"ATTEND", {"attend to", "attends to", "attended to"}},
      {"Look-At", {"look at", "looks at", "looked at"}},
      {"UNTIL", {"continue until", "continues until", "continued until"}},
      {"Stay", {"stay", "stays", "stayed"}},
      {"StayP", {"hold posture", "holds posture", "held posture"}},
      {"Fall", {"fall", "falls", "fell"}},
      {"Climb", {"climb onto", "climbs onto", "climbed onto"}},
      {"Stab", {"stab", "stabs", "stabbed"}},
      {"Orient", {"orient", "orients", "oriented"}},
      {"ENTER", {"enter", "enters", "entered"}},
      {"EXIT", {"exit", "exits", "exited"}},
      {"Heat", {"heat", "heats", "heated"}},
      {"Eject", {"eject", "ejects", "ejected"}},
      {"Indent", {"indent", "indents", "indented"}},
      {"Hit", {"hit", "hits", "hit"}},
  };
  auto it = lex.find(act);
  if (it != lex.end()) return it->second;
  static thread_local VerbForms tmp;
  std::string lower;
  for (char c : act) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  tmp = {lower, lower + "s", lower + "ed"};
  return tmp;
}

struct Renderer {
  const ConceptGraph& g;

  const Link* find_out(NodeId from, LinkKind k) const { return g.out_link(from, k); }

  std::string pp_phrase(NodeId id) const {
    const Node& n = g.node(id);
    std::string out = n.label;
    auto inst = n.attrs.find("inst");
    if (inst != n.attrs.end()) out += " " + inst->second;
    // remaining attributes qualify the PP
    for (auto& [k, v] : n.attrs) {
      if (k == "inst") continue;
      out += " (" + k + " " + v + ")";
    }
    return out;
  }

  std::string value_phrase(NodeId id) const {
    const Node& n = g.node(id);
    if (n.kind == NodeKind::PP) return pp_phrase(id);
    return n.label;
  }

  NodeId actor_of(NodeId head) const { return g.conceptualization_peer(head); }

  /// Verb phrase of an ACT without its subject; infinitive when asked.
  std::string act_vp(NodeId act, ModFlags mods, bool infinitive) const {
    const Node& n = g.node(act);
    const VerbForms& v = verb_for(n.label);
    std::string verb;
    if (infinitive) verb = v.base;
    else if (mods & ModNegated) verb = "does not " + v.base;
    else if (mods & ModPast) verb = v.past;
    else if (mods & ModFuture) verb = "will " + v.base;
    else if (mods & ModProbable) verb = "may " + v.base;
    else verb = v.third;
    std::string out = verb;
    if (auto* l = find_out(act, LinkKind::Object)) out += " " + pp_phrase(l->to);
    if (auto* f = find_out(act, LinkKind::RecipientFrom)) {
      out += " from " + pp_phrase(f->to);
      if (auto* t = find_out(act, LinkKind::RecipientTo)) out += " to " + pp_phrase(t->to);
    }
    if (auto* f = find_out(act, LinkKind::DirectionFrom)) out += " from " + value_phrase(f->to);
    if (auto* t = find_out(act, LinkKind::DirectionTo)) out += " to " + value_phrase(t->to);
    for (auto& [k, val] : g.node(act).attrs) out += " " + k + " " + val;
    if (auto* i = find_out(act, LinkKind::Instrument)) {
      const Node& tn = g.node(i->to);
      if (tn.kind == NodeKind::Act)
        out += " by " + vp_of_head(i->to, true);
      else
        out += " by way of " + pp_phrase(i->to);
    }
    return out;
  }

  std::string state_phrase_as_cause(NodeId st) const {
    const Node& n = g.node(st);
    NodeId subj = actor_of(st);
    std::string who = subj >= 0 ? pp_phrase(subj) : std::string("it");
    auto value = n.attrs.find("value");
    if (n.attrs.size() == 1 && value != n.attrs.end())
      return "the " + who + " being " + value->second;
    return "the state of " + who;
  }

  std::string state_clause(NodeId st, ModFlags mods) const {
    const Node& n = g.node(st);
    NodeId subj = actor_of(st);
    std::string who = subj >= 0 ? pp_phrase(subj) : std::string("it");
    std::string is = (mods & ModPast) ? "was" : (mods & ModFuture) ? "will be" : "is";
    if (mods & ModNegated) is += " not";
    auto value = n.attrs.find("value");
    if (n.attrs.size() == 1 && value != n.attrs.end()) return who + " " + is + " " + value->second;
    if (n.attrs.empty()) return who + " " + is + " in state " + n.label;
    std::string preds;
    for (auto& [k, v] : n.attrs) {
      if (!preds.empty()) preds += ", ";
      preds += k;
      if (!v.empty()) preds += " " + v;
    }
    return who + " " + is + " " + preds;
  }

  std::string change_clause(NodeId sc) const {
    const Node& n = g.node(sc);
    NodeId subj = actor_of(sc);
    std::string out = subj >= 0 ? pp_phrase(subj) + "'s " : "";
    out += n.label + " changes";
    if (auto* f = find_out(sc, LinkKind::DirectionFrom)) out += " from " + value_phrase(f->to);
    if (auto* t = find_out(sc, LinkKind::DirectionTo)) out += " to " + value_phrase(t->to);
    return out;
  }

  ModFlags conceptualization_mods(NodeId head) const {
    for (auto& l : g.links)
      if (l.kind == LinkKind::Conceptualization && (l.from == head || l.to == head))
        return l.mods;
    return 0;
  }

  std::string vp_of_head(NodeId head, bool infinitive) const {
    return act_vp(head, conceptualization_mods(head), infinitive);
  }

  /// Special case: removal-from-existence reads as nonexistence.
  bool is_removal(NodeId head) const {
    return g.node(head).kind == NodeKind::Act && g.node(head).label == "EXTRANS";
  }

  std::string clause(NodeId head) const {
    const Node& n = g.node(head);
    ModFlags mods = conceptualization_mods(head);
    switch (n.kind) {
      case NodeKind::State: return state_clause(head, mods);
      case NodeKind::StateChange: return change_clause(head);
      case NodeKind::ConceptRef: return "that " + n.label;
      case NodeKind::Act: {
        NodeId actor = actor_of(head);
        std::string subj = actor >= 0 ? pp_phrase(actor) : std::string("something");
        if (is_removal(head) && (mods & (ModConditionalFuture | ModConditional)))
          return subj + " does not exist";
        if (is_removal(head) && (mods & ModPast)) return subj + " was removed";
        return subj + " " + act_vp(head, mods, false);
      }
      default: return pp_phrase(head);
    }
  }

  std::string infinitive_of(NodeId head) const {
    const Node& n = g.node(head);
    if (n.kind == NodeKind::State) {
      NodeId subj = actor_of(head);
      std::string who = subj >= 0 ? pp_phrase(subj) : std::string("it");
      auto value = n.attrs.find("value");
      if (value != n.attrs.end()) return who + " to be " + value->second;
      return who + " to hold its state";
    }
    if (n.kind == NodeKind::StateChange) return change_clause(head);
    NodeId actor = actor_of(head);
    std::string who = actor >= 0 ? pp_phrase(actor) : std::string("it");
    return who + " to " + vp_of_head(head, true);
  }

  std::string sentence(NodeId root, std::set<NodeId>& done) const {
    done.insert(root);
    std::string out;
    const Node& n = g.node(root);
    // cause/enable chains are rendered from the source side
    const Link* causal = nullptr;
    for (auto& l : g.links)
      if (l.from == root && (l.kind == LinkKind::Cause || l.kind == LinkKind::Enable)) {
        causal = &l;
        break;
      }
    if (causal) {
      done.insert(causal->to);
      // follow chains: effect may itself cause further effects
      const Link* next = nullptr;
      for (auto& l : g.links)
        if (l.from == causal->to && (l.kind == LinkKind::Cause || l.kind == LinkKind::Enable))
          next = &l;
      if (causal->kind == LinkKind::Enable) {
        std::string cause = n.kind == NodeKind::State ? state_phrase_as_cause(root) : clause(root);
        out = cause + " enables " + infinitive_of(causal->to);
      } else {
        ModFlags cm = conceptualization_mods(root);
        bool hypo = (cm & (ModConditional | ModConditionalFuture)) ||
                    (causal->mods & (ModConditional | ModConditionalFuture));
        std::string connective = "causes";
        if (causal->mods & ModIntended) connective = "intentionally causes";
        if (causal->mods & ModIntendedUnknown) connective = "causes (intent unknown)";
        if (causal->mods & ModProbable) connective = "may cause";
        if (hypo)
          out = "if " + clause(root) + ", it " + connective + " " + infinitive_of(causal->to);
        else
          out = clause(root) + " " + connective + " " + infinitive_of(causal->to);
      }
      if (next) {
        out += ", which in turn " +
               (next->kind == LinkKind::Enable ? std::string("enables ") : std::string("causes ")) +
               infinitive_of(next->to);
        done.insert(next->to);
      }
      return out;
    }
    // temporal chain
    std::string out2 = clause(root);
    NodeId cur = root;
    for (;;) {
      const Link* temp = nullptr;
      for (auto& l : g.links)
        if (l.from == cur && l.kind == LinkKind::Temporal) { temp = &l; break; }
      if (!temp || done.count(temp->to)) break;
      done.insert(temp->to);
      out2 += "; then " + clause(temp->to);
      cur = temp->to;
    }
    return out2;
  }
};

} // namespace

std::string explain_clause(const ConceptGraph& g, NodeId head) {
  Renderer r{g};
  return r.clause(head);
}

std::string explain(const ConceptGraph& g) {
  Renderer r{g};
  std::set<NodeId> done;
  std::vector<NodeId> roots = g.roots;
  if (roots.empty()) {
    // fall back: heads that are not the target of any structural link
    std::set<NodeId> targeted;
    for (auto& l : g.links)
      if (l.kind == LinkKind::Cause || l.kind == LinkKind::Enable ||
          l.kind == LinkKind::Temporal)
        targeted.insert(l.to);
    for (auto& n : g.nodes)
      if (is_conceptualization_head(g, n.id) && !targeted.count(n.id)) roots.push_back(n.id);
  }
  std::string out;
  for (NodeId root : roots) {
    if (done.count(root)) continue;
    std::string s = r.sentence(root, done);
    if (s.empty()) continue;
    if (!out.empty()) out += ". ";
    out += s;
  }
  if (!out.empty()) out += ".";
  return out;
}

std::string to_dot(const ConceptGraph& g) {
  std::ostringstream os;
  os << "digraph \"" << (g.name.empty() ? "concept" : g.name) << "\" {\n";
  os << "  rankdir=LR;\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (auto& n : g.nodes) {
    os << "  n" << n.id << " [label=\"" << kind_name(n.kind) << "\\n" << n.label;
    for (auto& [k, v] : n.attrs) os << "\\n" << k << "=" << v;
    if (n.ground.kind == Grounding::Symbol) os << "\\n@" << n.ground.name;
    if (n.ground.kind == Grounding::AnchorRef) os << "\\nanchor:" << n.ground.name;
    if (n.ground.kind == Grounding::ElabRef) os << "\\nelab:" << n.ground.name;
    os << "\"];\n";
  }
  for (auto& l : g.links) {
    os << "  n" << l.from << " -> n" << l.to << " [label=\"" << link_kind_name(l.kind);
    std::string m = mods_to_string(l.mods);
    if (!m.empty()) os << "/" << m;
    os << "\"";
    if (l.kind == LinkKind::Conceptualization) os << ", dir=both";
    if (l.kind == LinkKind::Enable) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace cdp
