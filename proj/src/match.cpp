#include "cdplus/match.hpp"

#include <algorithm>

#include "cdplus/errors.hpp"

namespace cdp {

namespace {

struct Matcher {
  const ConceptGraph& p;
  const ConceptGraph& t;
  std::vector<NodeId> assign;   // pattern node -> target node or -1
  std::vector<bool> used;       // target nodes already taken
  std::vector<Bindings> found;

  Matcher(const ConceptGraph& p, const ConceptGraph& t)
      : p(p), t(t), assign(p.nodes.size(), -1), used(t.nodes.size(), false) {}

  static bool attrs_subset(const Node& pn, const Node& tn) {
    for (auto& [k, v] : pn.attrs) {
      auto it = tn.attrs.find(k);
      if (it == tn.attrs.end() || it->second != v) return false;
    }
    return true;
  }

  bool node_compatible(const Node& pn, const Node& tn) const {
    if (pn.kind != tn.kind) return false;
    if (!pn.is_variable() && pn.label != tn.label) return false;
    if (!attrs_subset(pn, tn)) return false;
    if (pn.ground.kind == Grounding::Symbol &&
        (tn.ground.kind != Grounding::Symbol || tn.ground.name != pn.ground.name))
      return false;
    return true;
  }

  bool links_consistent(NodeId pn, NodeId tn) const {
    // every pattern link with both ends assigned must exist in the target
    for (auto& pl : p.links) {
      NodeId a = -1, b = -1;
      if (pl.from == pn) { a = tn; b = assign[static_cast<size_t>(pl.to)]; }
      else if (pl.to == pn) { a = assign[static_cast<size_t>(pl.from)]; b = tn; }
      else continue;
      if (a < 0 || b < 0) continue;
      bool ok = false;
      for (auto& tl : t.links)
        if (tl.from == a && tl.to == b && tl.kind == pl.kind &&
            (tl.mods & pl.mods) == pl.mods) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }

  void run(size_t idx) {
    if (idx == p.nodes.size()) {
      Bindings b;
      for (auto& pn : p.nodes)
        if (pn.is_variable()) {
          NodeId tn = assign[static_cast<size_t>(pn.id)];
          b[pn.label] = Bound{tn, t.node(tn).kind, t.node(tn).label};
        }
      found.push_back(std::move(b));
      return;
    }
    const Node& pn = p.nodes[idx];
    for (auto& tn : t.nodes) {
      if (used[static_cast<size_t>(tn.id)]) continue;
      if (!node_compatible(pn, tn)) continue;
      assign[idx] = tn.id;
      if (links_consistent(pn.id, tn.id)) {
        used[static_cast<size_t>(tn.id)] = true;
        run(idx + 1);
        used[static_cast<size_t>(tn.id)] = false;
      }
      assign[idx] = -1;
    }
  }
};

} // namespace

std::vector<Bindings> match(const ConceptGraph& pattern, const ConceptGraph& target) {
  Matcher m(pattern, target);
  if (!pattern.nodes.empty()) m.run(0);
  std::sort(m.found.begin(), m.found.end());
  m.found.erase(std::unique(m.found.begin(), m.found.end()), m.found.end());
  return m.found;
}

bool embeds(const ConceptGraph& pattern, const ConceptGraph& target) {
  return !match(pattern, target).empty();
}

ConceptGraph substitute(const ConceptGraph& pattern, const Bindings& b) {
  ConceptGraph out = pattern;
  for (auto& n : out.nodes) {
    if (!n.is_variable()) continue;
    auto it = b.find(n.label);
    if (it == b.end()) continue;
    if (it->second.kind != n.kind)
      throw KindMismatch("cannot bind " + n.label + " (" + kind_name(n.kind) + ") to a " +
                         kind_name(it->second.kind) + " node");
    n.label = it->second.label;
  }
  return out;
}

} // namespace cdp
