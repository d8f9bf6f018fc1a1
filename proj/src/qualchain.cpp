#include "cdplus/kb.hpp"

#include <algorithm>

#include "cdplus/errors.hpp"
#include "cdplus/reasoner.hpp"

namespace cdp {

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::Down: return "down";
    case Trend::Steady: return "steady";
    case Trend::Up: return "up";
    case Trend::Null: return "null";
  }
  return "?";
}

Trend trend_from_string(const std::string& s) {
  if (s == "down") return Trend::Down;
  if (s == "steady") return Trend::Steady;
  if (s == "up") return Trend::Up;
  if (s == "null") return Trend::Null;
  throw UnknownSymbol("'" + s + "' is not a trend (down|steady|up|null)");
}

const QualChain::Stage* QualChain::find_stage(const std::string& n) const {
  for (auto& s : stages)
    if (s.name == n) return &s;
  return nullptr;
}

std::vector<std::string> check_chain(const QualChain& c) {
  static const std::vector<std::string> vocab{"Volume", "Pressure", "Temperature", "Flow"};
  std::vector<std::string> errs;
  for (auto& s : c.stages)
    for (auto& [v, t] : s.vars)
      if (std::find(vocab.begin(), vocab.end(), v) == vocab.end())
        errs.push_back("stage '" + s.name + "' uses unknown variable '" + v + "'");
  std::map<std::string, std::vector<std::string>> next;
  std::map<std::string, int> indeg;
  for (auto& s : c.stages) indeg[s.name] = 0;
  int loops = 0;
  for (auto& e : c.edges) {
    if (!c.find_stage(e.from) || !c.find_stage(e.to)) {
      errs.push_back("edge " + e.from + " -> " + e.to + " names an unknown stage");
      continue;
    }
    if (e.loop) {
      loops++;
      continue; // evaluated at steady state, not part of the traversal order
    }
    next[e.from].push_back(e.to);
    indeg[e.to]++;
  }
  if (loops > 1) errs.push_back("more than one declared loop edge");
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
    errs.push_back("chain '" + c.name + "' has an undeclared cycle");
  return errs;
}

Propagation propagate(const QualChain& c,
                      const std::vector<std::pair<std::string, std::string>>& clamps,
                      const Config& cfg) {
  (void)cfg;
  auto errs = check_chain(c);
  if (!errs.empty()) {
    for (auto& e : errs)
      if (e.find("cycle") != std::string::npos) throw CyclicChain(e);
    throw ValidationFailure(errs.front());
  }
  for (auto& [from, to] : clamps) {
    bool known = false;
    for (auto& e : c.edges) known = known || (e.from == from && e.to == to);
    if (!known)
      throw UnknownSymbol("no edge '" + from + "->" + to + "' in chain '" + c.name + "'");
  }
  auto clamped = [&](const QualChain::Edge& e) {
    for (auto& [from, to] : clamps)
      if (e.from == from && e.to == to) return true;
    return false;
  };

  // A clamped edge starves the stage it feeds; starvation then flows along
  // plain edges. Loop edges transmit nothing further at steady state.
  std::map<std::string, bool> alive;
  for (auto& st : c.stages) alive[st.name] = true;
  for (auto& e : c.edges)
    if (clamped(e)) alive[e.to] = false;
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto& e : c.edges) {
      if (e.loop) continue;
      if (!alive[e.from] && alive[e.to]) {
        alive[e.to] = false;
        grew = true;
      }
    }
  }

  Propagation p;
  for (auto& st : c.stages) {
    StageState ss;
    ss.stage = st.name;
    ss.reached = alive[st.name];
    for (auto& [var, tr] : st.vars) ss.vars[var] = ss.reached ? tr : Trend::Null;
    p.stages.push_back(std::move(ss));
    if (!alive[st.name]) p.broken.push_back(st.name);
  }
  p.terminal_ok = c.stages.empty() || alive[c.stages.back().name];
  for (auto& e : c.edges)
    if (clamped(e) && p.first_break.empty()) p.first_break = e.from + "->" + e.to;

  ConceptGraph g;
  g.name = c.name + "-conclusion";
  NodeId subj = g.add_node(NodeKind::PP, c.name);
  NodeId act = g.add_node(NodeKind::Act, "PTRANS");
  NodeId dir = g.add_node(NodeKind::PA, "Front");
  g.add_link(subj, act, LinkKind::Conceptualization, p.terminal_ok ? 0 : ModNegated);
  g.add_link(act, dir, LinkKind::DirectionTo);
  g.roots = {act};
  p.conclusion = std::move(g);
  return p;
}

} // namespace cdp
