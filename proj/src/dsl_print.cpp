#include <algorithm>
#include <cctype>
#include <optional>

#include "cdplus/dsl.hpp"

namespace cdp {

namespace {

bool plain_symbol(const std::string& t) {
  if (t.empty() || t[0] == ':') return false;
  for (char c : t)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
        c == '#' || c == '\\')
      return false;
  return true;
}

SExpr sym(const std::string& t) {
  SExpr e = SExpr::atom(t);
  e.quoted = !plain_symbol(t);
  return e;
}

SExpr num(double v) { return SExpr::atom(format_number(v)); }

SExpr point(Vec2 p) { return SExpr::list({num(p.x), num(p.y)}); }

void push_mods(std::vector<SExpr>& out, ModFlags m) {
  auto tense = [&](const char* v) {
    out.push_back(SExpr::atom(":tense"));
    out.push_back(SExpr::atom(v));
  };
  if (m & ModPast) tense("p");
  if (m & ModFuture) tense("f");
  if (m & ModConditional) tense("c");
  if (m & ModConditionalFuture) tense("cf");
  if (m & ModIntended) out.push_back(SExpr::atom(":i"));
  if (m & ModIntendedUnknown) out.push_back(SExpr::atom(":i?"));
  if (m & ModNegated) out.push_back(SExpr::atom(":not"));
  if (m & ModProbable) out.push_back(SExpr::atom(":may"));
}

std::string node_kind_surface(NodeKind k) {
  switch (k) {
    case NodeKind::PP: return "pp";
    case NodeKind::PA: return "pa";
    case NodeKind::Act: return "act";
    case NodeKind::State: return "state";
    case NodeKind::StateChange: return "change";
    case NodeKind::ConceptRef: return "ref";
  }
  return "?";
}

bool is_causal(LinkKind k) {
  return k == LinkKind::Cause || k == LinkKind::Enable || k == LinkKind::Temporal;
}

/// Rebuilds the structured surface syntax from a graph when the graph is a
/// single conceptualization/chain tree. Any sharing, branching or link kind
/// the structured syntax cannot spell makes the attempt fail, and the caller
/// falls back to the flat node/link listing.
struct SugarPrinter {
  const ConceptGraph& g;
  std::vector<char> node_used, link_used;

  explicit SugarPrinter(const ConceptGraph& gr)
      : g(gr), node_used(gr.nodes.size(), 0), link_used(gr.links.size(), 0) {}

  bool all_used() const {
    for (char c : node_used)
      if (!c) return false;
    for (char c : link_used)
      if (!c) return false;
    return true;
  }

  std::optional<SExpr> node_core(NodeId n) {
    if (node_used[static_cast<size_t>(n)]) return std::nullopt; // shared node
    node_used[static_cast<size_t>(n)] = 1;
    const Node& nd = g.node(n);
    std::vector<SExpr> items{SExpr::atom(node_kind_surface(nd.kind))};
    bool default_label = (nd.kind == NodeKind::State && nd.label == "State") ||
                         (nd.kind == NodeKind::StateChange && nd.label == "Change");
    if (!default_label) {
      if (nd.label.empty()) return std::nullopt; // only the flat form spells this
      items.push_back(sym(nd.label));
    }
    for (auto& [k, v] : nd.attrs) {
      if (!plain_symbol(k) || k == "is" || k == "mod") return std::nullopt;
      std::vector<SExpr> attr{SExpr::atom(k)};
      if (!v.empty()) attr.push_back(sym(v));
      items.push_back(SExpr::list(std::move(attr)));
    }
    switch (nd.ground.kind) {
      case Grounding::None: break;
      case Grounding::Symbol:
        items.push_back(SExpr::atom(":sym"));
        items.push_back(sym(nd.ground.name));
        break;
      case Grounding::AnchorRef:
        items.push_back(SExpr::atom(":anchor"));
        items.push_back(sym(nd.ground.name));
        break;
      case Grounding::ElabRef:
        items.push_back(SExpr::atom(":elab"));
        items.push_back(sym(nd.ground.name));
        break;
    }
    // a state-change spells its endpoints inside the node form
    if (nd.kind == NodeKind::StateChange) {
      for (auto dir : {LinkKind::DirectionFrom, LinkKind::DirectionTo}) {
        for (size_t li = 0; li < g.links.size(); li++) {
          const Link& l = g.links[li];
          if (l.from != n || l.kind != dir || link_used[li]) continue;
          if (l.mods) return std::nullopt;
          link_used[li] = 1;
          items.push_back(SExpr::atom(dir == LinkKind::DirectionFrom ? ":from" : ":to"));
          auto target = node_leaf(l.to);
          if (!target) return std::nullopt;
          items.push_back(std::move(*target));
          break;
        }
      }
    }
    // qualifier links
    for (size_t li = 0; li < g.links.size(); li++) {
      const Link& l = g.links[li];
      if (l.from != n || link_used[li]) continue;
      if (l.kind != LinkKind::Attributive && l.kind != LinkKind::Modifier) continue;
      if (l.mods) return std::nullopt;
      link_used[li] = 1;
      auto target = node_leaf(l.to);
      if (!target) return std::nullopt;
      items.push_back(SExpr::list({SExpr::atom(l.kind == LinkKind::Attributive ? "is" : "mod"),
                                   std::move(*target)}));
    }
    return SExpr::list(std::move(items));
  }

  /// A node in operand position: all its remaining links must be qualifier
  /// links. Plain PPs shorten to a bare atom.
  std::optional<SExpr> node_leaf(NodeId n) {
    const Node& nd = g.node(n);
    bool bare = nd.kind == NodeKind::PP && nd.attrs.empty() &&
                nd.ground.kind == Grounding::None && plain_symbol(nd.label);
    auto core = node_core(n);
    if (!core) return std::nullopt;
    for (size_t li = 0; li < g.links.size(); li++)
      if (!link_used[li] && g.links[li].from == n) return std::nullopt;
    if (bare && core->items.size() == 2) return sym(nd.label);
    return core;
  }

  /// One conceptualization with its subject and role clauses.
  std::optional<SExpr> head_expr(NodeId h) {
    const Node& hn = g.node(h);
    // exactly one unused incoming link is allowed: the subject's
    size_t subject_link = g.links.size();
    for (size_t li = 0; li < g.links.size(); li++) {
      const Link& l = g.links[li];
      if (l.to != h || link_used[li]) continue;
      if (l.kind != LinkKind::Conceptualization) return std::nullopt;
      if (subject_link != g.links.size()) return std::nullopt;
      subject_link = li;
    }
    ModFlags mods = 0;
    std::optional<SExpr> subject;
    if (subject_link != g.links.size()) {
      const Link& l = g.links[subject_link];
      if (g.node(l.from).kind != NodeKind::PP) return std::nullopt;
      link_used[subject_link] = 1;
      mods = l.mods;
      subject = node_leaf(l.from);
      if (!subject) return std::nullopt;
    }
    auto core = node_core(h);
    if (!core) return std::nullopt;

    std::optional<SExpr> object, recip_from, recip_to, dir_from, dir_to, instr;
    for (size_t li = 0; li < g.links.size(); li++) {
      const Link& l = g.links[li];
      if (l.from != h || link_used[li] || is_causal(l.kind)) continue;
      if (l.mods) return std::nullopt;
      auto fill = [&](std::optional<SExpr>& slot, std::optional<SExpr> v) {
        if (slot || !v) return false;
        slot = std::move(v);
        return true;
      };
      bool placed = false;
      switch (l.kind) {
        case LinkKind::Object:
          link_used[li] = 1;
          placed = fill(object, node_leaf(l.to));
          break;
        case LinkKind::RecipientFrom:
          link_used[li] = 1;
          placed = fill(recip_from, node_leaf(l.to));
          break;
        case LinkKind::RecipientTo:
          link_used[li] = 1;
          placed = fill(recip_to, node_leaf(l.to));
          break;
        case LinkKind::DirectionFrom:
          link_used[li] = 1;
          placed = fill(dir_from, node_leaf(l.to));
          break;
        case LinkKind::DirectionTo:
          link_used[li] = 1;
          placed = fill(dir_to, node_leaf(l.to));
          break;
        case LinkKind::Instrument: {
          link_used[li] = 1;
          const Node& tn = g.node(l.to);
          placed = fill(instr, tn.kind == NodeKind::PP ? node_leaf(l.to) : head_expr(l.to));
          break;
        }
        default:
          return std::nullopt; // anchor/elaboration links need the flat form
      }
      if (!placed) return std::nullopt;
    }
    if ((recip_from && !recip_to) || (!recip_from && recip_to)) return std::nullopt;

    bool roles = object || recip_from || dir_from || dir_to || instr;
    if (!subject && !roles && !mods) return core; // just the head clause
    if (!subject && mods) return std::nullopt;

    std::vector<SExpr> items{SExpr::atom("c")};
    push_mods(items, mods);
    if (subject)
      items.push_back(SExpr::list(
          {SExpr::atom(hn.kind == NodeKind::Act ? "actor" : "about"), std::move(*subject)}));
    items.push_back(std::move(*core));
    if (object) items.push_back(SExpr::list({SExpr::atom("object"), std::move(*object)}));
    if (recip_from)
      items.push_back(SExpr::list({SExpr::atom("recip"), SExpr::atom(":from"),
                                   std::move(*recip_from), SExpr::atom(":to"),
                                   std::move(*recip_to)}));
    if (dir_from || dir_to) {
      std::vector<SExpr> d{SExpr::atom("dir")};
      if (dir_from) {
        d.push_back(SExpr::atom(":from"));
        d.push_back(std::move(*dir_from));
      }
      if (dir_to) {
        d.push_back(SExpr::atom(":to"));
        d.push_back(std::move(*dir_to));
      }
      items.push_back(SExpr::list(std::move(d)));
    }
    if (instr) items.push_back(SExpr::list({SExpr::atom("instr"), std::move(*instr)}));
    return SExpr::list(std::move(items));
  }

  /// A head followed by its outgoing cause/enable/temporal chain, printed as
  /// right-nested binary combinators.
  std::optional<SExpr> chain_expr(NodeId h) {
    const Node& hn = g.node(h);
    std::optional<SExpr> e =
        (hn.kind == NodeKind::PP || hn.kind == NodeKind::PA) ? node_leaf(h) : head_expr(h);
    if (!e) return std::nullopt;
    size_t chain_link = g.links.size();
    for (size_t li = 0; li < g.links.size(); li++) {
      const Link& l = g.links[li];
      if (l.from != h || link_used[li] || !is_causal(l.kind)) continue;
      if (chain_link != g.links.size()) return std::nullopt; // branching
      chain_link = li;
    }
    if (chain_link == g.links.size()) return e;
    const Link& l = g.links[chain_link];
    link_used[chain_link] = 1;
    auto rest = chain_expr(l.to);
    if (!rest) return std::nullopt;
    std::vector<SExpr> items{SExpr::atom(link_kind_name(l.kind))};
    push_mods(items, l.mods);
    items.push_back(std::move(*e));
    items.push_back(std::move(*rest));
    return SExpr::list(std::move(items));
  }
};

SExpr flat_graph_to_sexpr(const ConceptGraph& g) {
  std::vector<SExpr> items{SExpr::atom("graph")};
  auto id_of = [](NodeId n) { return SExpr::atom("n" + std::to_string(n)); };
  for (size_t i = 0; i < g.nodes.size(); i++) {
    const Node& nd = g.nodes[i];
    std::vector<SExpr> n{SExpr::atom("node"), id_of(static_cast<NodeId>(i)),
                         SExpr::atom(node_kind_surface(nd.kind)), sym(nd.label)};
    for (auto& [k, v] : nd.attrs) {
      std::vector<SExpr> attr{SExpr::atom(k)};
      if (!v.empty()) attr.push_back(sym(v));
      n.push_back(SExpr::list(std::move(attr)));
    }
    switch (nd.ground.kind) {
      case Grounding::None: break;
      case Grounding::Symbol:
        n.push_back(SExpr::atom(":sym"));
        n.push_back(sym(nd.ground.name));
        break;
      case Grounding::AnchorRef:
        n.push_back(SExpr::atom(":anchor"));
        n.push_back(sym(nd.ground.name));
        break;
      case Grounding::ElabRef:
        n.push_back(SExpr::atom(":elab"));
        n.push_back(sym(nd.ground.name));
        break;
    }
    items.push_back(SExpr::list(std::move(n)));
  }
  for (auto& l : g.links) {
    std::vector<SExpr> e{SExpr::atom("link"), id_of(l.from), id_of(l.to),
                         SExpr::atom(link_kind_name(l.kind))};
    push_mods(e, l.mods);
    items.push_back(SExpr::list(std::move(e)));
  }
  for (auto r : g.roots) items.push_back(SExpr::list({SExpr::atom("root"), id_of(r)}));
  return SExpr::list(std::move(items));
}

SExpr shape_to_sexpr(const Polygon& p) {
  std::vector<SExpr> items{SExpr::atom("poly")};
  for (auto& v : p.pts) items.push_back(point(v));
  return SExpr::list(std::move(items));
}

SExpr condition_to_sexpr(const Condition& c) {
  std::vector<SExpr> items{SExpr::atom(c.symbol)};
  if (c.kind == Condition::Relation) {
    for (auto& a : c.args) items.push_back(sym(a));
  } else {
    auto param = [](const Condition::Param& p) {
      if (p.func.empty()) return sym(p.arg);
      return SExpr::list({SExpr::atom(p.func), sym(p.arg)});
    };
    items.push_back(param(c.lhs));
    items.push_back(param(c.rhs));
  }
  return SExpr::list(std::move(items));
}

SExpr script_to_sexpr(const Script& s) {
  std::vector<SExpr> items{SExpr::atom(s.may_events ? "mes" : "script"), sym(s.name)};
  auto name_list = [&](const char* head, const std::vector<std::string>& xs) {
    if (xs.empty()) return;
    std::vector<SExpr> l{SExpr::atom(head)};
    for (auto& x : xs) l.push_back(sym(x));
    items.push_back(SExpr::list(std::move(l)));
  };
  name_list("props", s.props);
  name_list("roles", s.roles);
  for (auto& e : s.entry_conditions)
    items.push_back(SExpr::list({SExpr::atom("entry"), graph_to_sexpr(e)}));
  for (auto& r : s.results)
    items.push_back(SExpr::list({SExpr::atom("result"), graph_to_sexpr(r)}));
  if (s.may_events) {
    for (auto& sc : s.scenes)
      for (auto& ev : sc.events)
        items.push_back(
            SExpr::list({SExpr::atom("event"), sym(ev.name), graph_to_sexpr(ev.graph)}));
  } else {
    for (auto& sc : s.scenes) {
      std::vector<SExpr> scl{SExpr::atom("scene"), sym(sc.name)};
      for (auto& ev : sc.events)
        scl.push_back(SExpr::list({SExpr::atom("event"), sym(ev.name), graph_to_sexpr(ev.graph)}));
      for (auto& [a, b] : sc.order)
        scl.push_back(SExpr::list({SExpr::atom("order"), sym(a), sym(b)}));
      items.push_back(SExpr::list(std::move(scl)));
    }
  }
  return SExpr::list(std::move(items));
}

SExpr function_to_sexpr(const FunctionDefinition& f) {
  std::vector<SExpr> items{SExpr::atom("function"), sym(f.name)};
  items.push_back(SExpr::list({SExpr::atom("fact"), graph_to_sexpr(f.fact)}));
  if (!f.cfact.nodes.empty())
    items.push_back(SExpr::list({SExpr::atom("cfact"), graph_to_sexpr(f.cfact)}));
  if (!f.conditions.empty()) {
    std::vector<SExpr> c{SExpr::atom("cond")};
    for (auto& cd : f.conditions) c.push_back(condition_to_sexpr(cd));
    items.push_back(SExpr::list(std::move(c)));
  }
  if (!f.mes.empty()) items.push_back(SExpr::list({SExpr::atom("mes"), sym(f.mes)}));
  if (f.has_motivation())
    items.push_back(SExpr::list({SExpr::atom("motivation"), graph_to_sexpr(f.motivation)}));
  return SExpr::list(std::move(items));
}

SExpr chain_to_sexpr(const QualChain& c) {
  std::vector<SExpr> items{SExpr::atom("chain"), sym(c.name)};
  for (auto& st : c.stages) {
    std::vector<SExpr> s{SExpr::atom("stage"), sym(st.name)};
    for (auto& [v, t] : st.vars)
      s.push_back(SExpr::list({SExpr::atom(v), SExpr::atom(trend_name(t))}));
    items.push_back(SExpr::list(std::move(s)));
  }
  for (auto& e : c.edges) {
    std::vector<SExpr> l{SExpr::atom(e.loop ? "loop" : "edge"), sym(e.from), sym(e.to)};
    if (e.enable) l.push_back(SExpr::atom(":enable"));
    items.push_back(SExpr::list(std::move(l)));
  }
  return SExpr::list(std::move(items));
}

SExpr body_to_sexpr(const BodyDecl& b) {
  std::vector<SExpr> items{SExpr::atom("body"), sym(b.name), SExpr::atom(":at"), point(b.at),
                           SExpr::atom(":posture"), sym(b.posture)};
  if (b.facing != 1) {
    items.push_back(SExpr::atom(":facing"));
    items.push_back(num(b.facing));
  }
  if (b.scale != 1) {
    items.push_back(SExpr::atom(":scale"));
    items.push_back(num(b.scale));
  }
  if (!b.scene.empty()) {
    items.push_back(SExpr::atom(":scene"));
    items.push_back(sym(b.scene));
  }
  return SExpr::list(std::move(items));
}

SExpr ask_to_sexpr(const Ask& a) {
  std::vector<SExpr> items{SExpr::atom("ask"), SExpr::atom(ask_kind_name(a.kind))};
  if (a.kind == Ask::Recognize) items.push_back(sym(a.function));
  auto kv = [&](const char* k, const std::string& v) {
    if (v.empty()) return;
    items.push_back(SExpr::atom(k));
    items.push_back(sym(v));
  };
  kv(":scene", a.scene);
  kv(":part", a.part);
  kv(":body", a.body);
  kv(":chain", a.chain);
  auto name_list = [&](const char* k, const std::vector<std::string>& xs) {
    if (xs.empty()) return;
    items.push_back(SExpr::atom(k));
    std::vector<SExpr> l;
    for (auto& x : xs) l.push_back(sym(x));
    items.push_back(SExpr::list(std::move(l)));
  };
  name_list(":assembly", a.assembly);
  name_list(":kb", a.kb);
  if (!a.goal.nodes.empty())
    items.push_back(SExpr::list({SExpr::atom("goal"), graph_to_sexpr(a.goal)}));
  for (auto& [f, t] : a.clamps)
    items.push_back(SExpr::list({SExpr::atom("clamp"), sym(f), sym(t)}));
  return SExpr::list(std::move(items));
}

SExpr concept_to_sexpr(const ConceptGraph& g) {
  std::vector<SExpr> items{SExpr::atom("concept"), sym(g.name)};
  if (!g.nodes.empty()) {
    SExpr body = graph_to_sexpr(g);
    if (body.head() == "c") { // splice conceptualization clauses directly
      for (size_t k = 1; k < body.items.size(); k++) items.push_back(std::move(body.items[k]));
    } else if (body.kind == SExpr::Atom) { // a lone entity still needs a node form
      items.push_back(SExpr::list({SExpr::atom("pp"), std::move(body)}));
    } else {
      items.push_back(std::move(body));
    }
  }
  return SExpr::list(std::move(items));
}

} // namespace

SExpr graph_to_sexpr(const ConceptGraph& g) {
  if (g.roots.size() == 1 && !g.nodes.empty()) {
    SugarPrinter sp(g);
    auto e = sp.chain_expr(g.roots[0]);
    if (e && sp.all_used()) return *e;
  }
  return flat_graph_to_sexpr(g);
}

SExpr scene_to_sexpr(const Scene& s) {
  std::vector<SExpr> items{SExpr::atom("scene"), sym(s.name)};
  if (s.ground_y != 0)
    items.push_back(SExpr::list({SExpr::atom("ground"), num(s.ground_y)}));
  for (auto& b : s.bodies) {
    std::vector<SExpr> o{SExpr::atom("obj"), sym(b.id), shape_to_sexpr(b.shape),
                         SExpr::atom(":at"), point(b.at)};
    if (b.angle != 0) {
      o.push_back(SExpr::atom(":angle"));
      o.push_back(num(b.angle));
    }
    if (b.mat.hardness != Ord::Mid) {
      o.push_back(SExpr::atom(":hardness"));
      o.push_back(SExpr::atom(ord_to_string(b.mat.hardness)));
    }
    if (b.mat.weight != Ord::Mid) {
      o.push_back(SExpr::atom(":weight"));
      o.push_back(SExpr::atom(ord_to_string(b.mat.weight)));
    }
    if (b.heading) {
      o.push_back(SExpr::atom(":front"));
      o.push_back(point(*b.heading));
    }
    if (b.fixed) o.push_back(SExpr::atom(":fixed"));
    if (!b.tags.empty()) {
      o.push_back(SExpr::atom(":tags"));
      std::vector<SExpr> t;
      for (auto& tag : b.tags) t.push_back(sym(tag));
      o.push_back(SExpr::list(std::move(t)));
    }
    for (auto& d : b.dents)
      o.push_back(SExpr::list({SExpr::atom("dent"), shape_to_sexpr(d.region), sym(d.profile)}));
    items.push_back(SExpr::list(std::move(o)));
  }
  for (auto& at : s.attachments) {
    std::vector<SExpr> a{SExpr::atom("attach"), sym(at.a), sym(at.b)};
    if (at.continuum) a.push_back(SExpr::atom(":continuum"));
    items.push_back(SExpr::list(std::move(a)));
  }
  for (auto& m : s.markers)
    items.push_back(SExpr::list({SExpr::atom("marker"), sym(m.id), point(m.at)}));
  return SExpr::list(std::move(items));
}

std::string print_document(const SourceDocument& d) {
  std::string out;
  for (size_t i = 0; i < d.decls.size(); i++) {
    SExpr form = std::visit(
        [](const auto& decl) -> SExpr {
          using T = std::decay_t<decltype(decl)>;
          if constexpr (std::is_same_v<T, ConceptGraph>) return concept_to_sexpr(decl);
          else if constexpr (std::is_same_v<T, Script>) return script_to_sexpr(decl);
          else if constexpr (std::is_same_v<T, Scene>) return scene_to_sexpr(decl);
          else if constexpr (std::is_same_v<T, FunctionDefinition>) return function_to_sexpr(decl);
          else if constexpr (std::is_same_v<T, BodyDecl>) return body_to_sexpr(decl);
          else if constexpr (std::is_same_v<T, QualChain>) return chain_to_sexpr(decl);
          else return ask_to_sexpr(decl);
        },
        d.decls[i]);
    if (i) out += "\n";
    out += write_sexpr_pretty(form);
    out += "\n";
  }
  return out;
}

bool scenes_equal(const Scene& a, const Scene& b) {
  if (a.name != b.name || a.ground_y != b.ground_y) return false;
  if (a.bodies.size() != b.bodies.size() || a.attachments.size() != b.attachments.size() ||
      a.markers.size() != b.markers.size())
    return false;
  for (size_t i = 0; i < a.bodies.size(); i++) {
    const RigidBody &x = a.bodies[i], &y = b.bodies[i];
    if (x.id != y.id || x.shape.pts != y.shape.pts || !(x.at == y.at) || x.angle != y.angle ||
        x.mat.hardness != y.mat.hardness || x.mat.weight != y.mat.weight ||
        x.heading != y.heading || x.fixed != y.fixed || x.tags != y.tags ||
        x.dents.size() != y.dents.size())
      return false;
    for (size_t j = 0; j < x.dents.size(); j++)
      if (x.dents[j].region.pts != y.dents[j].region.pts ||
          x.dents[j].profile != y.dents[j].profile)
        return false;
  }
  for (size_t i = 0; i < a.attachments.size(); i++) {
    const Attachment &x = a.attachments[i], &y = b.attachments[i];
    if (x.a != y.a || x.b != y.b || x.continuum != y.continuum) return false;
  }
  for (size_t i = 0; i < a.markers.size(); i++)
    if (a.markers[i].id != b.markers[i].id || !(a.markers[i].at == b.markers[i].at)) return false;
  return true;
}

bool scripts_equal(const Script& a, const Script& b) {
  if (a.name != b.name || a.may_events != b.may_events || a.props != b.props ||
      a.roles != b.roles || a.entry_conditions.size() != b.entry_conditions.size() ||
      a.results.size() != b.results.size() || a.scenes.size() != b.scenes.size())
    return false;
  for (size_t i = 0; i < a.entry_conditions.size(); i++)
    if (!graphs_equal(a.entry_conditions[i], b.entry_conditions[i])) return false;
  for (size_t i = 0; i < a.results.size(); i++)
    if (!graphs_equal(a.results[i], b.results[i])) return false;
  for (size_t i = 0; i < a.scenes.size(); i++) {
    const ScriptScene &x = a.scenes[i], &y = b.scenes[i];
    if (x.name != y.name || x.order != y.order || x.events.size() != y.events.size())
      return false;
    for (size_t j = 0; j < x.events.size(); j++)
      if (x.events[j].name != y.events[j].name ||
          !graphs_equal(x.events[j].graph, y.events[j].graph))
        return false;
  }
  return true;
}

namespace {

bool functions_equal(const FunctionDefinition& a, const FunctionDefinition& b) {
  return a.name == b.name && graphs_equal(a.fact, b.fact) && graphs_equal(a.cfact, b.cfact) &&
         a.conditions == b.conditions && a.mes == b.mes &&
         graphs_equal(a.motivation, b.motivation);
}

bool chains_equal(const QualChain& a, const QualChain& b) {
  return a.name == b.name && a.stages == b.stages && a.edges == b.edges;
}

bool bodies_equal(const BodyDecl& a, const BodyDecl& b) {
  return a.name == b.name && a.at == b.at && a.posture == b.posture && a.facing == b.facing &&
         a.scale == b.scale && a.scene == b.scene;
}

bool asks_equal(const Ask& a, const Ask& b) {
  return a.kind == b.kind && a.function == b.function && a.scene == b.scene &&
         a.part == b.part && a.assembly == b.assembly && a.body == b.body &&
         graphs_equal(a.goal, b.goal) && a.kb == b.kb && a.chain == b.chain &&
         a.clamps == b.clamps;
}

} // namespace

bool documents_equal(const SourceDocument& a, const SourceDocument& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); i++) {
    const Declaration &x = a.decls[i], &y = b.decls[i];
    if (x.index() != y.index()) return false;
    bool same = std::visit(
        [&](const auto& xd) -> bool {
          using T = std::decay_t<decltype(xd)>;
          const T& yd = std::get<T>(y);
          if constexpr (std::is_same_v<T, ConceptGraph>)
            return xd.name == yd.name && graphs_equal(xd, yd);
          else if constexpr (std::is_same_v<T, Script>) return scripts_equal(xd, yd);
          else if constexpr (std::is_same_v<T, Scene>) return scenes_equal(xd, yd);
          else if constexpr (std::is_same_v<T, FunctionDefinition>) return functions_equal(xd, yd);
          else if constexpr (std::is_same_v<T, BodyDecl>) return bodies_equal(xd, yd);
          else if constexpr (std::is_same_v<T, QualChain>) return chains_equal(xd, yd);
          else return asks_equal(xd, yd);
        },
        x);
    if (!same) return false;
  }
  return true;
}

} // namespace cdp
