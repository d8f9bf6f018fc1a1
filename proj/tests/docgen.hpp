// Random generator for valid source documents, shared by the round-trip
// property tests. Every document it produces must parse, validate and
// resolve, so generation sticks to the construction rules by design.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "cdplus/dsl.hpp"

namespace docgen {

struct Gen {
  std::mt19937 rng;

  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

  template <class T>
  const T& from(const std::vector<T>& xs) {
    return xs[static_cast<size_t>(pick(0, static_cast<int>(xs.size()) - 1))];
  }
};

inline cdp::ModFlags random_mods(Gen& g, bool causal) {
  cdp::ModFlags m = 0;
  if (g.chance(0.3))
    m |= g.from<cdp::ModFlags>({cdp::ModPast, cdp::ModFuture, cdp::ModConditional,
                                cdp::ModConditionalFuture});
  if (causal && g.chance(0.2)) m |= g.chance(0.5) ? cdp::ModIntended : cdp::ModIntendedUnknown;
  if (g.chance(0.1)) m |= cdp::ModNegated;
  if (g.chance(0.1)) m |= cdp::ModProbable;
  return m;
}

/// What names a graph may refer to without breaking document resolution.
struct RefScope {
  bool ref_base = false;              // a concept named "base" is declared
  std::vector<std::string> anchors;   // usable anchor names ("" = none)
};

inline cdp::NodeId random_pp(Gen& g, cdp::ConceptGraph& cg, const RefScope& scope) {
  static const std::vector<std::string> labels{"Person", "Box",  "?x",   "Rod",
                                               "Table",  "Feet", "Water", "two words"};
  cdp::NodeId n = cg.add_node(cdp::NodeKind::PP, g.from(labels));
  if (g.chance(0.2))
    cg.node(n).attrs[g.from<std::string>({"value", "count"})] =
        g.from<std::string>({"high", "3", "a few"});
  if (g.chance(0.25)) {
    int kind = g.pick(0, 2);
    if (kind == 0) cg.node(n).ground = {cdp::Grounding::Symbol, "sym" + std::to_string(g.pick(0, 9))};
    else if (kind == 1 && scope.ref_base) cg.node(n).ground = {cdp::Grounding::ElabRef, "base"};
    else if (kind == 2 && !scope.anchors.empty())
      cg.node(n).ground = {cdp::Grounding::AnchorRef, g.from(scope.anchors)};
  }
  int quals = g.chance(0.3) ? g.pick(1, 2) : 0;
  for (int q = 0; q < quals; q++) {
    cdp::NodeId pa = cg.add_node(g.chance(0.7) ? cdp::NodeKind::PA : cdp::NodeKind::PP,
                                 g.from<std::string>({"Little", "Red", "Heavy", "Flat"}));
    cg.add_link(n, pa, g.chance(0.7) ? cdp::LinkKind::Attributive : cdp::LinkKind::Modifier);
  }
  return n;
}

/// One conceptualization head with subject and role links, valid by
/// construction.
inline cdp::NodeId random_head(Gen& g, cdp::ConceptGraph& cg, const RefScope& scope) {
  int kindSel = g.pick(0, 9);
  cdp::NodeKind kind = kindSel < 6   ? cdp::NodeKind::Act
                       : kindSel < 8 ? cdp::NodeKind::State
                                     : cdp::NodeKind::StateChange;
  std::string label;
  if (kind == cdp::NodeKind::Act)
    label = g.from<std::string>({"PTRANS", "ATRANS", "PROPEL", "MOVE", "INGEST", "GRASP"});
  else if (kind == cdp::NodeKind::State)
    label = g.chance(0.6) ? "State" : g.from<std::string>({"Contains", "Height"});
  else
    label = "Change";
  cdp::NodeId h = cg.add_node(kind, label);
  if (g.chance(0.3))
    cg.node(h).attrs[g.from<std::string>({"value", "at", "rate"})] =
        g.from<std::string>({"high", "low", "42", "unlocked", "height H"});

  if (g.chance(0.8)) { // subject
    cdp::NodeId s = random_pp(g, cg, scope);
    cg.add_link(s, h, cdp::LinkKind::Conceptualization, random_mods(g, false));
  }
  if (kind == cdp::NodeKind::StateChange) { // endpoints are required
    for (auto lk : {cdp::LinkKind::DirectionFrom, cdp::LinkKind::DirectionTo}) {
      cdp::NodeId v = cg.add_node(cdp::NodeKind::PA,
                                  g.from<std::string>({"P1", "P2", "Open", "Shut", "Dry"}));
      cg.add_link(h, v, lk);
    }
  }
  if (kind == cdp::NodeKind::Act) {
    if (g.chance(0.5)) cg.add_link(h, random_pp(g, cg, scope), cdp::LinkKind::Object);
    if (g.chance(0.2)) {
      cg.add_link(h, random_pp(g, cg, scope), cdp::LinkKind::RecipientFrom);
      cg.add_link(h, random_pp(g, cg, scope), cdp::LinkKind::RecipientTo);
    }
    if (g.chance(0.3)) {
      if (g.chance(0.7)) cg.add_link(h, random_pp(g, cg, scope), cdp::LinkKind::DirectionFrom);
      cg.add_link(h, random_pp(g, cg, scope), cdp::LinkKind::DirectionTo);
    }
    if (g.chance(0.25)) {
      if (g.chance(0.5)) {
        cg.add_link(h, random_pp(g, cg, scope), cdp::LinkKind::Instrument);
      } else {
        cdp::NodeId a = cg.add_node(cdp::NodeKind::Act, "MOVE");
        if (g.chance(0.7)) cg.add_link(a, random_pp(g, cg, scope), cdp::LinkKind::Object);
        cg.add_link(h, a, cdp::LinkKind::Instrument);
      }
    }
  }
  return h;
}

inline cdp::ConceptGraph random_graph(Gen& g, const RefScope& scope) {
  cdp::ConceptGraph cg;
  int heads = g.pick(1, 3);
  std::vector<cdp::NodeId> hs;
  for (int i = 0; i < heads; i++) hs.push_back(random_head(g, cg, scope));
  for (size_t i = 0; i + 1 < hs.size(); i++) {
    auto lk = g.from<cdp::LinkKind>({cdp::LinkKind::Cause, cdp::LinkKind::Enable,
                                     cdp::LinkKind::Temporal});
    cg.add_link(hs[i], hs[i + 1], lk, random_mods(g, lk != cdp::LinkKind::Temporal));
  }
  cg.roots = {hs[0]};
  // occasionally force the flat spelling: extra roots, shared subjects,
  // reference/elaboration links
  if (g.chance(0.2)) {
    switch (g.pick(0, 2)) {
      case 0:
        cg.roots.push_back(cg.add_node(cdp::NodeKind::PP, "Spare"));
        break;
      case 1: {
        // elaboration links may only leave entities, acts and states
        if (scope.ref_base && cg.node(hs[0]).kind != cdp::NodeKind::StateChange) {
          cdp::NodeId r = cg.add_node(cdp::NodeKind::ConceptRef, "base");
          cg.add_link(hs[0], r, cdp::LinkKind::Elaboration);
        }
        break;
      }
      case 2: {
        // share one entity between the tree and a second conceptualization
        cdp::NodeId shared = -1;
        for (auto& n : cg.nodes)
          if (n.kind == cdp::NodeKind::PP) {
            shared = n.id;
            break;
          }
        if (shared >= 0) {
          cdp::NodeId extra = cg.add_node(cdp::NodeKind::Act, "MOVE");
          cg.add_link(shared, extra, cdp::LinkKind::Conceptualization);
          cg.roots.push_back(extra);
        }
        break;
      }
    }
  }
  return cg;
}

inline cdp::Scene random_scene(Gen& g, const std::string& name) {
  cdp::Scene s;
  s.name = name;
  s.ground_y = g.chance(0.7) ? 0 : g.real(-5, 5);
  int n = g.pick(1, 4);
  for (int i = 0; i < n; i++) {
    cdp::RigidBody b;
    b.id = "b" + std::to_string(i);
    switch (g.pick(0, 3)) {
      case 0: b.shape = cdp::make_box(g.real(2, 10), g.real(2, 8)); break;
      case 1: b.shape = cdp::Polygon{{{0, 0}, {8, 0}, {4, 6}}}; break;
      case 2: b.shape = cdp::Polygon{{{0, 0}, {10, 0}, {8, 4}, {2, 4}}}; break;
      default: b.shape = cdp::Polygon{{{3, 0}, {7, 0}, {9, 4}, {5, 7}, {1, 4}}}; break;
    }
    b.at = {i * 40.0 + g.real(-3, 3), s.ground_y + 20 + g.real(0, 4)};
    if (g.chance(0.5)) b.angle = g.real(-180, 180);
    b.mat.hardness = static_cast<cdp::Ord>(g.pick(1, 3));
    b.mat.weight = static_cast<cdp::Ord>(g.pick(1, 3));
    if (g.chance(0.15)) b.fixed = true;
    if (g.chance(0.2)) b.heading = cdp::Vec2{g.real(-1, 1), g.real(-1, 1)};
    int tags = g.chance(0.4) ? g.pick(1, 2) : 0;
    for (int t = 0; t < tags; t++)
      b.tags.insert(g.from<std::string>({"Seat", "Legs", "Back", "tool"}));
    if (g.chance(0.2))
      b.dents.push_back({cdp::Polygon{{{1, 1}, {2, 1}, {2, 2}, {1, 2}}},
                         g.chance(0.5) ? "point" : "edge"});
    s.bodies.push_back(std::move(b));
  }
  if (n >= 2 && g.chance(0.3)) {
    int i = g.pick(0, n - 2);
    s.attachments.push_back({"b" + std::to_string(i), "b" + std::to_string(i + 1), g.chance(0.3)});
  }
  int markers = g.chance(0.3) ? g.pick(1, 2) : 0;
  for (int m = 0; m < markers; m++)
    s.markers.push_back({"m" + std::to_string(m), {g.real(-20, 20), g.real(0, 30)}});
  return s;
}

inline cdp::Script random_script(Gen& g, const std::string& name, bool mes, const RefScope& scope) {
  cdp::Script s;
  s.name = name;
  s.may_events = mes;
  int props = g.chance(0.4) ? g.pick(1, 2) : 0;
  for (int i = 0; i < props; i++) s.props.push_back("prop" + std::to_string(i));
  int roles = g.chance(0.4) ? g.pick(1, 2) : 0;
  for (int i = 0; i < roles; i++) s.roles.push_back("role" + std::to_string(i));
  if (g.chance(0.4)) s.entry_conditions.push_back(random_graph(g, scope));
  if (g.chance(0.4)) s.results.push_back(random_graph(g, scope));
  if (mes) {
    cdp::ScriptScene pool;
    pool.name = "events";
    int ev = g.pick(1, 3);
    for (int i = 0; i < ev; i++)
      pool.events.push_back({"ev" + std::to_string(i), random_graph(g, scope)});
    s.scenes.push_back(std::move(pool));
  } else {
    int scenes = g.pick(1, 2);
    for (int sc = 0; sc < scenes; sc++) {
      cdp::ScriptScene ss;
      ss.name = "part" + std::to_string(sc);
      int ev = g.pick(1, 3);
      for (int i = 0; i < ev; i++)
        ss.events.push_back({"ev" + std::to_string(i), random_graph(g, scope)});
      for (int i = 0; i + 1 < ev; i++)
        if (g.chance(0.6))
          ss.order.emplace_back("ev" + std::to_string(i), "ev" + std::to_string(i + 1));
      s.scenes.push_back(std::move(ss));
    }
  }
  return s;
}

inline cdp::FunctionDefinition random_function(Gen& g, const std::string& name,
                                               const std::vector<std::string>& scripts,
                                               const RefScope& scope) {
  cdp::FunctionDefinition f;
  f.name = name;
  {
    cdp::ConceptGraph& cg = f.fact;
    cdp::NodeId x = cg.add_node(cdp::NodeKind::PP, "?x");
    cdp::NodeId h = cg.add_node(cdp::NodeKind::Act,
                                g.from<std::string>({"Support", "Contain", "PROPEL"}));
    cg.add_link(x, h, cdp::LinkKind::Conceptualization);
    cdp::NodeId y = cg.add_node(cdp::NodeKind::PP, "?y");
    cg.add_link(h, y, cdp::LinkKind::Object);
    cg.roots = {h};
    cg.name = name + ".fact";
  }
  if (g.chance(0.6)) {
    cdp::ConceptGraph& cg = f.cfact;
    cdp::NodeId x = cg.add_node(cdp::NodeKind::PP, "?y");
    cdp::NodeId h = cg.add_node(cdp::NodeKind::StateChange, "Change");
    cg.add_link(x, h, cdp::LinkKind::Conceptualization, cdp::ModConditionalFuture);
    cdp::NodeId a = cg.add_node(cdp::NodeKind::PA, "P1");
    cdp::NodeId b = cg.add_node(cdp::NodeKind::PA, "P2");
    cg.add_link(h, a, cdp::LinkKind::DirectionFrom);
    cg.add_link(h, b, cdp::LinkKind::DirectionTo);
    cg.roots = {h};
    cg.name = name + ".cfact";
  }
  int conds = g.chance(0.6) ? g.pick(1, 2) : 0;
  for (int i = 0; i < conds; i++) {
    cdp::Condition c;
    if (g.chance(0.5)) {
      c.kind = cdp::Condition::Relation;
      c.symbol = g.from<std::string>({"touching", "above", "rigid"});
      c.args = {"?x", "?y"};
    } else {
      c.kind = cdp::Condition::Compare;
      c.symbol = g.from<std::string>({"ge", "gt", "le", "lt", "eq", "ne"});
      c.lhs = {"hardness", "?x"};
      c.rhs = g.chance(0.5) ? cdp::Condition::Param{"hardness", "?y"}
                            : cdp::Condition::Param{"", "mid"};
    }
    f.conditions.push_back(std::move(c));
  }
  if (!scripts.empty() && g.chance(0.5)) f.mes = g.from(scripts);
  if (g.chance(0.3)) {
    f.motivation = random_graph(g, scope);
    f.motivation.name = name + ".motivation";
  }
  return f;
}

inline cdp::QualChain random_chain(Gen& g, const std::string& name) {
  cdp::QualChain c;
  c.name = name;
  static const std::vector<std::string> vocab{"Volume", "Pressure", "Temperature", "Flow"};
  int stages = g.pick(2, 4);
  for (int i = 0; i < stages; i++) {
    cdp::QualChain::Stage st;
    st.name = "st" + std::to_string(i);
    int vars = g.pick(1, 3);
    for (int v = 0; v < vars; v++)
      st.vars[vocab[static_cast<size_t>(g.pick(0, 3))]] = static_cast<cdp::Trend>(g.pick(0, 3));
    c.stages.push_back(std::move(st));
  }
  for (int i = 0; i + 1 < stages; i++)
    c.edges.push_back({"st" + std::to_string(i), "st" + std::to_string(i + 1), g.chance(0.3), false});
  if (stages >= 3 && g.chance(0.3))
    c.edges.push_back({"st" + std::to_string(stages - 1), "st0", false, true});
  return c;
}

inline cdp::SourceDocument random_document(Gen& g) {
  cdp::SourceDocument doc;
  RefScope scope;

  // a small base concept every reference can point at
  {
    cdp::ConceptGraph base;
    base.name = "base";
    cdp::NodeId p = base.add_node(cdp::NodeKind::PP, "Person");
    cdp::NodeId a = base.add_node(cdp::NodeKind::Act, "MOVE");
    base.add_link(p, a, cdp::LinkKind::Conceptualization);
    base.roots = {a};
    doc.decls.emplace_back(std::move(base));
    scope.ref_base = true;
  }

  std::vector<std::string> scenes, functions, scripts, chains, bodies;
  std::vector<std::string> scene_objects; // ids within the last scene
  std::vector<std::pair<std::string, std::string>> chain_edges; // of the last chain

  int extra = g.pick(1, 6);
  for (int i = 0; i < extra; i++) {
    switch (g.pick(0, 5)) {
      case 0: {
        cdp::ConceptGraph cg = random_graph(g, scope);
        cg.name = "c" + std::to_string(i);
        doc.decls.emplace_back(std::move(cg));
        break;
      }
      case 1: {
        std::string name = "sc" + std::to_string(i);
        cdp::Scene s = random_scene(g, name);
        scenes.push_back(name);
        scope.anchors.clear();
        scope.anchors.push_back(name);
        scene_objects.clear();
        for (auto& b : s.bodies) {
          scope.anchors.push_back(b.id);
          scene_objects.push_back(b.id);
        }
        for (auto& m : s.markers) scope.anchors.push_back(m.id);
        doc.decls.emplace_back(std::move(s));
        break;
      }
      case 2: {
        std::string name = "scr" + std::to_string(i);
        doc.decls.emplace_back(random_script(g, name, g.chance(0.4), scope));
        scripts.push_back(name);
        break;
      }
      case 3: {
        std::string name = "fn" + std::to_string(i);
        doc.decls.emplace_back(random_function(g, name, scripts, scope));
        functions.push_back(name);
        break;
      }
      case 4: {
        std::string name = "ch" + std::to_string(i);
        cdp::QualChain c = random_chain(g, name);
        chain_edges.clear();
        for (auto& e : c.edges) chain_edges.emplace_back(e.from, e.to);
        doc.decls.emplace_back(std::move(c));
        chains.push_back(name);
        break;
      }
      default: {
        cdp::BodyDecl b;
        b.name = "who" + std::to_string(i);
        b.at = {g.real(-10, 10), g.real(0, 5)};
        b.posture = g.from<std::string>({"Standing", "Sitting", "BP1", "BP4"});
        if (g.chance(0.3)) b.facing = -1;
        if (g.chance(0.3)) b.scale = g.real(0.5, 2);
        if (!scenes.empty() && g.chance(0.7)) b.scene = scenes.back();
        bodies.push_back(b.name);
        doc.decls.emplace_back(std::move(b));
        break;
      }
    }
  }

  // queries against whatever the document declared
  if (!scenes.empty() && !functions.empty() && g.chance(0.5)) {
    cdp::Ask a;
    a.kind = cdp::Ask::Recognize;
    a.function = functions.back();
    a.scene = scenes.back();
    doc.decls.emplace_back(std::move(a));
  }
  if (!scenes.empty() && !scene_objects.empty() && g.chance(0.3)) {
    cdp::Ask a;
    a.kind = cdp::Ask::Experiment;
    a.scene = scenes.back();
    a.part = scene_objects.front();
    doc.decls.emplace_back(std::move(a));
  }
  if (!scenes.empty() && !bodies.empty() && g.chance(0.3)) {
    cdp::Ask a;
    a.kind = cdp::Ask::Chair;
    a.scene = scenes.back();
    a.body = bodies.back();
    if (g.chance(0.5)) a.assembly = scene_objects;
    doc.decls.emplace_back(std::move(a));
  }
  if (!scenes.empty() && g.chance(0.3)) {
    cdp::Ask a;
    a.kind = cdp::Ask::Plan;
    a.scene = scenes.back();
    a.goal = random_graph(g, scope);
    a.goal.name = "goal";
    if (!functions.empty() && g.chance(0.5)) a.kb = {functions.back(), "base"};
    doc.decls.emplace_back(std::move(a));
  }
  if (!chains.empty() && g.chance(0.5)) {
    cdp::Ask a;
    a.kind = cdp::Ask::Propagate;
    a.chain = chains.back();
    if (!chain_edges.empty() && g.chance(0.5)) a.clamps.push_back(chain_edges.front());
    doc.decls.emplace_back(std::move(a));
  }
  return doc;
}

} // namespace docgen
