#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cdplus/dsl.hpp"
#include "cdplus/errors.hpp"

namespace cdp {

namespace {

[[noreturn]] void fail(const SExpr& at, const std::string& msg) {
  throw ParseError(msg, at.line, at.col);
}

bool is_kw(const SExpr& e) {
  return e.kind == SExpr::Atom && !e.quoted && !e.text.empty() && e.text[0] == ':';
}

std::string want_sym(const SExpr& e, const char* what) {
  if (e.kind != SExpr::Atom || e.quoted) fail(e, std::string("expected ") + what);
  return e.text;
}

std::string want_name(const SExpr& e, const char* what) {
  if (e.kind != SExpr::Atom) fail(e, std::string("expected ") + what);
  return e.text;
}

double want_num(const SExpr& e, const char* what) {
  if (!e.is_number()) fail(e, std::string("expected ") + what + " (a number)");
  return e.as_number();
}

Vec2 want_point(const SExpr& e, const char* what) {
  if (e.kind != SExpr::List || e.items.size() != 2)
    fail(e, std::string("expected ") + what + " as (x y)");
  return {want_num(e.items[0], "x"), want_num(e.items[1], "y")};
}

/// Consumes one modifier keyword starting at items[k]; returns the next index.
size_t mod_keyword(const SExpr& form, size_t k, ModFlags& mods) {
  const auto& items = form.items;
  const std::string& kw = items[k].text;
  if (kw == ":tense") {
    if (k + 1 >= items.size()) fail(items[k], ":tense needs a value (p|f|c|cf)");
    std::string v = want_sym(items[k + 1], "tense value");
    if (v == "p") mods |= ModPast;
    else if (v == "f") mods |= ModFuture;
    else if (v == "c") mods |= ModConditional;
    else if (v == "cf") mods |= ModConditionalFuture;
    else fail(items[k + 1], "tense must be p, f, c or cf");
    return k + 2;
  }
  if (kw == ":i") { mods |= ModIntended; return k + 1; }
  if (kw == ":i?") { mods |= ModIntendedUnknown; return k + 1; }
  if (kw == ":not") { mods |= ModNegated; return k + 1; }
  if (kw == ":may") { mods |= ModProbable; return k + 1; }
  fail(items[k], "unknown modifier keyword '" + kw + "'");
}

bool is_expr_head(const std::string& h) {
  static const std::set<std::string> heads{"pp",    "pa",     "act",  "state", "change",
                                           "ref",   "c",      "cause", "enable", "then",
                                           "graph"};
  return heads.count(h) > 0;
}

NodeKind node_kind_from(const SExpr& at, const std::string& h) {
  if (h == "pp") return NodeKind::PP;
  if (h == "pa") return NodeKind::PA;
  if (h == "act") return NodeKind::Act;
  if (h == "state") return NodeKind::State;
  if (h == "change") return NodeKind::StateChange;
  if (h == "ref") return NodeKind::ConceptRef;
  fail(at, "unknown node kind '" + h + "'");
}

LinkKind link_kind_from(const SExpr& at, const std::string& n) {
  static const std::map<std::string, LinkKind> table{
      {"conc", LinkKind::Conceptualization},
      {"attr", LinkKind::Attributive},
      {"mod", LinkKind::Modifier},
      {"obj", LinkKind::Object},
      {"recip-from", LinkKind::RecipientFrom},
      {"recip-to", LinkKind::RecipientTo},
      {"instr", LinkKind::Instrument},
      {"dir-from", LinkKind::DirectionFrom},
      {"dir-to", LinkKind::DirectionTo},
      {"cause", LinkKind::Cause},
      {"enable", LinkKind::Enable},
      {"then", LinkKind::Temporal},
      {"elab", LinkKind::Elaboration},
      {"anchor", LinkKind::Anchor}};
  auto it = table.find(n);
  if (it == table.end()) fail(at, "unknown link kind '" + n + "'");
  return it->second;
}

struct GraphCompiler {
  ConceptGraph g;

  NodeId expr(const SExpr& e) {
    if (e.kind == SExpr::Atom) {
      if (is_kw(e)) fail(e, "keyword where an expression was expected");
      return g.add_node(NodeKind::PP, e.text);
    }
    std::string h = e.head();
    if (h == "c") return c_form(e, 1);
    if (h == "cause" || h == "enable" || h == "then") return chain_form(e);
    if (h == "graph") fail(e, "(graph ...) is only allowed as a whole graph body");
    return node_form(e);
  }

  NodeId node_form(const SExpr& e) {
    NodeKind kind = node_kind_from(e, e.head());
    size_t k = 1;
    std::string label;
    if (k < e.items.size() && e.items[k].kind == SExpr::Atom && !is_kw(e.items[k])) {
      label = e.items[k].text;
      k++;
    } else if (kind == NodeKind::State) {
      label = "State";
    } else if (kind == NodeKind::StateChange) {
      label = "Change";
    } else {
      fail(e, "(" + e.head() + " ...) needs a label");
    }
    NodeId id = g.add_node(kind, label);
    bool from_seen = false, to_seen = false;
    while (k < e.items.size()) {
      const SExpr& it = e.items[k];
      if (is_kw(it)) {
        const std::string& kw = it.text;
        if (kw == ":anchor" || kw == ":elab" || kw == ":sym") {
          if (k + 1 >= e.items.size()) fail(it, kw + " needs a name");
          if (g.node(id).ground.kind != Grounding::None) fail(it, "node already grounded");
          Grounding::Kind gk = kw == ":anchor"  ? Grounding::AnchorRef
                               : kw == ":elab" ? Grounding::ElabRef
                                               : Grounding::Symbol;
          g.node(id).ground = {gk, want_sym(e.items[k + 1], "name")};
          k += 2;
        } else if ((kw == ":from" || kw == ":to") && kind == NodeKind::StateChange) {
          if (k + 1 >= e.items.size()) fail(it, kw + " needs a value");
          bool& seen = kw == ":from" ? from_seen : to_seen;
          if (seen) fail(it, "duplicate " + kw);
          seen = true;
          NodeId target = expr(e.items[k + 1]);
          g.add_link(id, target,
                     kw == ":from" ? LinkKind::DirectionFrom : LinkKind::DirectionTo);
          k += 2;
        } else {
          fail(it, "keyword '" + kw + "' is not valid inside a node form");
        }
      } else if (it.kind == SExpr::List) {
        std::string h = it.head();
        if (h == "is" || h == "mod") {
          if (it.items.size() != 2) fail(it, "(" + h + " ...) takes one expression");
          NodeId target = expr(it.items[1]);
          g.add_link(id, target, h == "is" ? LinkKind::Attributive : LinkKind::Modifier);
        } else {
          if (h.empty()) fail(it, "expected an attribute clause");
          if (it.items.size() > 2) fail(it, "attribute takes at most one value");
          std::string value;
          if (it.items.size() == 2) {
            if (it.items[1].kind != SExpr::Atom) fail(it.items[1], "attribute value must be an atom");
            value = it.items[1].text;
          }
          if (g.node(id).attrs.count(h)) fail(it, "duplicate attribute '" + h + "'");
          g.node(id).attrs[h] = value;
        }
        k++;
      } else {
        fail(it, "unexpected atom in a node form");
      }
    }
    return id;
  }

  NodeId c_form(const SExpr& form, size_t first) {
    const SExpr* subject = nullptr;
    const SExpr* headcl = nullptr;
    const SExpr* object = nullptr;
    const SExpr* recip = nullptr;
    const SExpr* dir = nullptr;
    const SExpr* instr = nullptr;
    ModFlags mods = 0;
    size_t k = first;
    while (k < form.items.size()) {
      const SExpr& it = form.items[k];
      if (is_kw(it)) {
        k = mod_keyword(form, k, mods);
        continue;
      }
      if (it.kind != SExpr::List) fail(it, "expected a clause");
      std::string h = it.head();
      auto put = [&](const SExpr*& slot) {
        if (slot) fail(it, "duplicate '" + h + "' clause");
        slot = &it;
      };
      if (h == "actor" || h == "about") put(subject);
      else if (h == "act" || h == "state" || h == "change" || h == "ref") put(headcl);
      else if (h == "object") put(object);
      else if (h == "recip") put(recip);
      else if (h == "dir") put(dir);
      else if (h == "instr") put(instr);
      else fail(it, "unknown clause '" + h + "' in a conceptualization");
      k++;
    }
    if (!headcl) fail(form, "conceptualization needs an (act ...), (state ...), (change ...) or (ref ...) clause");

    NodeId subj = -1;
    if (subject) {
      if (subject->items.size() != 2) fail(*subject, "subject clause takes one expression");
      subj = expr(subject->items[1]);
    }
    NodeId head = node_form(*headcl);
    if (subj >= 0) g.add_link(subj, head, LinkKind::Conceptualization, mods);
    else if (mods) fail(form, "modifier keywords need a subject clause to attach to");

    if (object) {
      if (object->items.size() != 2) fail(*object, "(object ...) takes one expression");
      g.add_link(head, expr(object->items[1]), LinkKind::Object);
    }
    if (recip) {
      const SExpr* from = nullptr;
      const SExpr* to = nullptr;
      endpoints(*recip, from, to);
      if (!from || !to) fail(*recip, "(recip ...) needs both :from and :to");
      g.add_link(head, expr(*from), LinkKind::RecipientFrom);
      g.add_link(head, expr(*to), LinkKind::RecipientTo);
    }
    if (dir) {
      const SExpr* from = nullptr;
      const SExpr* to = nullptr;
      endpoints(*dir, from, to);
      if (!from && !to) fail(*dir, "(dir ...) needs :from and/or :to");
      if (from) g.add_link(head, expr(*from), LinkKind::DirectionFrom);
      if (to) g.add_link(head, expr(*to), LinkKind::DirectionTo);
    }
    if (instr) {
      // (instr X) with one expression, or (instr clause...) as a spliced
      // conceptualization, e.g. (instr (act Move) (object (pp Feet)))
      if (instr->items.size() < 2) fail(*instr, "(instr ...) takes an expression or clauses");
      if (instr->items.size() == 2 &&
          (instr->items[1].kind == SExpr::Atom || is_expr_head(instr->items[1].head())))
        g.add_link(head, expr(instr->items[1]), LinkKind::Instrument);
      else
        g.add_link(head, c_form(*instr, 1), LinkKind::Instrument);
    }
    return head;
  }

  void endpoints(const SExpr& form, const SExpr*& from, const SExpr*& to) {
    size_t k = 1;
    while (k < form.items.size()) {
      const SExpr& it = form.items[k];
      if (!is_kw(it)) fail(it, "expected :from or :to");
      if (k + 1 >= form.items.size()) fail(it, it.text + " needs a value");
      if (it.text == ":from") {
        if (from) fail(it, "duplicate :from");
        from = &form.items[k + 1];
      } else if (it.text == ":to") {
        if (to) fail(it, "duplicate :to");
        to = &form.items[k + 1];
      } else {
        fail(it, "expected :from or :to, got '" + it.text + "'");
      }
      k += 2;
    }
  }

  NodeId chain_form(const SExpr& e) {
    LinkKind kind = e.head() == "cause"    ? LinkKind::Cause
                    : e.head() == "enable" ? LinkKind::Enable
                                           : LinkKind::Temporal;
    ModFlags mods = 0;
    std::vector<NodeId> heads;
    size_t k = 1;
    while (k < e.items.size()) {
      if (is_kw(e.items[k])) {
        k = mod_keyword(e, k, mods);
        continue;
      }
      heads.push_back(expr(e.items[k]));
      k++;
    }
    if (heads.size() < 2) fail(e, "(" + e.head() + " ...) needs at least two operands");
    for (size_t i = 0; i + 1 < heads.size(); i++)
      g.add_link(heads[i], heads[i + 1], kind, mods);
    return heads[0];
  }

  void flat_form(const SExpr& e) {
    std::map<std::string, NodeId> ids;
    for (size_t k = 1; k < e.items.size(); k++) {
      const SExpr& it = e.items[k];
      if (it.head() != "node") continue;
      if (it.items.size() < 4) fail(it, "(node id kind label ...) expected");
      std::string id = want_sym(it.items[1], "node id");
      if (ids.count(id)) fail(it, "duplicate node id '" + id + "'");
      NodeKind kind = node_kind_from(it.items[2], want_sym(it.items[2], "node kind"));
      std::string label = want_name(it.items[3], "node label");
      NodeId n = g.add_node(kind, label);
      ids[id] = n;
      size_t j = 4;
      while (j < it.items.size()) {
        const SExpr& cl = it.items[j];
        if (is_kw(cl)) {
          const std::string& kw = cl.text;
          if (kw != ":anchor" && kw != ":elab" && kw != ":sym")
            fail(cl, "keyword '" + kw + "' is not valid on a flat node");
          if (j + 1 >= it.items.size()) fail(cl, kw + " needs a name");
          if (g.node(n).ground.kind != Grounding::None) fail(cl, "node already grounded");
          Grounding::Kind gk = kw == ":anchor"  ? Grounding::AnchorRef
                               : kw == ":elab" ? Grounding::ElabRef
                                               : Grounding::Symbol;
          g.node(n).ground = {gk, want_sym(it.items[j + 1], "name")};
          j += 2;
        } else if (cl.kind == SExpr::List) {
          std::string h = cl.head();
          if (h.empty() || h == "is" || h == "mod")
            fail(cl, "links are explicit (link ...) forms in a flat graph");
          if (cl.items.size() > 2) fail(cl, "attribute takes at most one value");
          std::string value;
          if (cl.items.size() == 2) {
            if (cl.items[1].kind != SExpr::Atom) fail(cl.items[1], "attribute value must be an atom");
            value = cl.items[1].text;
          }
          if (g.node(n).attrs.count(h)) fail(cl, "duplicate attribute '" + h + "'");
          g.node(n).attrs[h] = value;
          j++;
        } else {
          fail(cl, "unexpected atom on a flat node");
        }
      }
    }
    for (size_t k = 1; k < e.items.size(); k++) {
      const SExpr& it = e.items[k];
      std::string h = it.head();
      if (h == "node") continue;
      if (h == "link") {
        if (it.items.size() < 4) fail(it, "(link from to kind ...) expected");
        auto a = ids.find(want_sym(it.items[1], "node id"));
        auto b = ids.find(want_sym(it.items[2], "node id"));
        if (a == ids.end()) fail(it.items[1], "unknown node id '" + it.items[1].text + "'");
        if (b == ids.end()) fail(it.items[2], "unknown node id '" + it.items[2].text + "'");
        LinkKind kind = link_kind_from(it.items[3], want_sym(it.items[3], "link kind"));
        ModFlags mods = 0;
        size_t j = 4;
        while (j < it.items.size()) {
          if (!is_kw(it.items[j])) fail(it.items[j], "expected a modifier keyword");
          j = mod_keyword(it, j, mods);
        }
        g.add_link(a->second, b->second, kind, mods);
      } else if (h == "root") {
        if (it.items.size() != 2) fail(it, "(root id) expected");
        auto r = ids.find(want_sym(it.items[1], "node id"));
        if (r == ids.end()) fail(it.items[1], "unknown node id '" + it.items[1].text + "'");
        g.roots.push_back(r->second);
      } else {
        fail(it, "expected (node ...), (link ...) or (root ...) in a flat graph");
      }
    }
    if (g.roots.empty() && !g.nodes.empty()) g.roots = {0};
  }
};

/// Compiles one whole-graph form: structured expression or flat listing.
ConceptGraph compile_single(const SExpr& form) {
  GraphCompiler gc;
  if (form.head() == "graph") {
    gc.flat_form(form);
  } else {
    NodeId head = gc.expr(form);
    gc.g.roots = {head};
  }
  return std::move(gc.g);
}

ConceptGraph compile_concept_body(const SExpr& form) {
  ConceptGraph g;
  g.name = want_sym(form.items[1], "concept name");
  if (form.items.size() == 2) return g; // empty concept
  if (form.items.size() == 3 && form.items[2].kind == SExpr::List &&
      is_expr_head(form.items[2].head())) {
    std::string name = g.name;
    g = compile_single(form.items[2]);
    g.name = name;
    return g;
  }
  GraphCompiler gc;
  gc.g.name = g.name;
  NodeId head = gc.c_form(form, 2);
  gc.g.roots = {head};
  return std::move(gc.g);
}

Polygon parse_shape(const SExpr& e, const std::string& owner) {
  std::string h = e.head();
  if (h == "rect") {
    if (e.items.size() != 3) fail(e, "(rect width height) expected");
    double w = want_num(e.items[1], "width");
    double hh = want_num(e.items[2], "height");
    if (w <= 0 || hh <= 0)
      throw DegenerateShape("rectangle for '" + owner + "' must have positive extent");
    return make_box(w, hh);
  }
  if (h == "poly") {
    Polygon p;
    for (size_t k = 1; k < e.items.size(); k++) p.pts.push_back(want_point(e.items[k], "vertex"));
    if (p.pts.size() < 3)
      throw DegenerateShape("polygon for '" + owner + "' needs at least 3 vertices");
    double a2 = 0; // shoelace; reversed input is accepted and normalized to CCW
    for (size_t i = 0; i < p.pts.size(); i++) {
      Vec2 u = p.pts[i], v = p.pts[(i + 1) % p.pts.size()];
      a2 += u.x * v.y - v.x * u.y;
    }
    if (a2 == 0) throw DegenerateShape("polygon for '" + owner + "' has zero area");
    if (a2 < 0) std::reverse(p.pts.begin(), p.pts.end());
    return p;
  }
  fail(e, "expected (rect w h) or (poly (x y) ...)");
}

Script parse_script_form(const SExpr& form, bool may_events) {
  Script s;
  s.may_events = may_events;
  if (form.items.size() < 2) fail(form, "script needs a name");
  s.name = want_sym(form.items[1], "script name");
  ScriptScene pool; // events written directly into a may-event script
  pool.name = "events";
  for (size_t k = 2; k < form.items.size(); k++) {
    const SExpr& it = form.items[k];
    std::string h = it.head();
    if (h == "props" || h == "roles") {
      auto& out = h == "props" ? s.props : s.roles;
      for (size_t j = 1; j < it.items.size(); j++) out.push_back(want_sym(it.items[j], "name"));
    } else if (h == "entry" || h == "result") {
      if (it.items.size() != 2) fail(it, "(" + h + " ...) takes one graph form");
      auto& out = h == "entry" ? s.entry_conditions : s.results;
      out.push_back(compile_single(it.items[1]));
    } else if (h == "event") {
      if (may_events) {
        if (it.items.size() != 3) fail(it, "(event name form) expected");
        pool.events.push_back({want_sym(it.items[1], "event name"), compile_single(it.items[2])});
      } else {
        fail(it, "ordered scripts keep events inside (scene ...) groups");
      }
    } else if (h == "scene") {
      if (may_events) fail(it, "a may-event script has no scene groups");
      ScriptScene sc;
      if (it.items.size() < 2) fail(it, "scene group needs a name");
      sc.name = want_sym(it.items[1], "scene name");
      for (size_t j = 2; j < it.items.size(); j++) {
        const SExpr& cl = it.items[j];
        std::string ch = cl.head();
        if (ch == "event") {
          if (cl.items.size() != 3) fail(cl, "(event name form) expected");
          sc.events.push_back({want_sym(cl.items[1], "event name"), compile_single(cl.items[2])});
        } else if (ch == "order") {
          if (cl.items.size() != 3) fail(cl, "(order before after) expected");
          sc.order.emplace_back(want_sym(cl.items[1], "event name"),
                                want_sym(cl.items[2], "event name"));
        } else {
          fail(cl, "expected (event ...) or (order ...) in a scene group");
        }
      }
      s.scenes.push_back(std::move(sc));
    } else {
      fail(it, "unknown script clause '" + h + "'");
    }
  }
  if (may_events) s.scenes.push_back(std::move(pool));
  return s;
}

Condition parse_condition(const SExpr& e) {
  static const std::set<std::string> cmp{"ge", "gt", "le", "lt", "eq", "ne"};
  if (e.kind != SExpr::List || e.head().empty()) fail(e, "expected a condition clause");
  Condition c;
  c.symbol = e.head();
  if (cmp.count(c.symbol)) {
    c.kind = Condition::Compare;
    if (e.items.size() != 3) fail(e, "comparison takes two operands");
    auto param = [&](const SExpr& p) -> Condition::Param {
      if (p.kind == SExpr::Atom) return {"", p.text};
      if (p.items.size() != 2) fail(p, "parameter is (measure object)");
      return {want_sym(p.items[0], "measure"), want_name(p.items[1], "object")};
    };
    c.lhs = param(e.items[1]);
    c.rhs = param(e.items[2]);
  } else {
    c.kind = Condition::Relation;
    for (size_t k = 1; k < e.items.size(); k++)
      c.args.push_back(want_name(e.items[k], "argument"));
  }
  return c;
}

FunctionDefinition parse_function_form(const SExpr& form) {
  FunctionDefinition f;
  if (form.items.size() < 2) fail(form, "function needs a name");
  f.name = want_sym(form.items[1], "function name");
  for (size_t k = 2; k < form.items.size(); k++) {
    const SExpr& it = form.items[k];
    std::string h = it.head();
    if (h == "fact" || h == "cfact" || h == "motivation") {
      if (it.items.size() != 2) fail(it, "(" + h + " ...) takes one graph form");
      ConceptGraph g = compile_single(it.items[1]);
      g.name = f.name + "." + h;
      if (h == "fact") f.fact = std::move(g);
      else if (h == "cfact") f.cfact = std::move(g);
      else f.motivation = std::move(g);
    } else if (h == "cond") {
      for (size_t j = 1; j < it.items.size(); j++) f.conditions.push_back(parse_condition(it.items[j]));
    } else if (h == "mes") {
      if (it.items.size() != 2) fail(it, "(mes name) expected");
      f.mes = want_sym(it.items[1], "script name");
    } else {
      fail(it, "unknown function clause '" + h + "'");
    }
  }
  if (f.fact.nodes.empty()) fail(form, "function '" + f.name + "' needs a (fact ...) clause");
  // variable discipline: the counterfactual and the conditions may only
  // mention slots the fact (or cfact) binds
  auto fact_vars = f.fact.variables();
  std::set<std::string> known(fact_vars.begin(), fact_vars.end());
  for (auto& v : f.cfact.variables())
    if (!known.count(v))
      throw ValidationFailure("function '" + f.name + "': counterfactual variable " + v +
                              " is not bound by the fact pattern");
  for (auto& v : f.cfact.variables()) known.insert(v);
  auto check_var = [&](const std::string& a) {
    if (!a.empty() && a[0] == '?' && !known.count(a))
      throw ValidationFailure("function '" + f.name + "': condition references unknown variable " + a);
  };
  for (auto& c : f.conditions) {
    for (auto& a : c.args) check_var(a);
    check_var(c.lhs.arg);
    check_var(c.rhs.arg);
  }
  return f;
}

QualChain parse_chain_form(const SExpr& form) {
  QualChain c;
  if (form.items.size() < 2) fail(form, "chain needs a name");
  c.name = want_sym(form.items[1], "chain name");
  for (size_t k = 2; k < form.items.size(); k++) {
    const SExpr& it = form.items[k];
    std::string h = it.head();
    if (h == "stage") {
      if (it.items.size() < 2) fail(it, "(stage name (Var trend)...) expected");
      QualChain::Stage st;
      st.name = want_sym(it.items[1], "stage name");
      for (size_t j = 2; j < it.items.size(); j++) {
        const SExpr& v = it.items[j];
        if (v.kind != SExpr::List || v.items.size() != 2) fail(v, "(Variable trend) expected");
        std::string var = want_sym(v.items[0], "variable");
        if (st.vars.count(var)) fail(v, "duplicate variable '" + var + "'");
        st.vars[var] = trend_from_string(want_sym(v.items[1], "trend"));
      }
      c.stages.push_back(std::move(st));
    } else if (h == "edge" || h == "loop") {
      if (it.items.size() < 3) fail(it, "(" + h + " from to) expected");
      QualChain::Edge e;
      e.from = want_sym(it.items[1], "stage name");
      e.to = want_sym(it.items[2], "stage name");
      e.loop = h == "loop";
      for (size_t j = 3; j < it.items.size(); j++) {
        if (it.items[j].is_atom(":enable")) e.enable = true;
        else fail(it.items[j], "only :enable is valid here");
      }
      c.edges.push_back(std::move(e));
    } else {
      fail(it, "unknown chain clause '" + h + "'");
    }
  }
  return c;
}

BodyDecl parse_body_form(const SExpr& form) {
  BodyDecl b;
  if (form.items.size() < 2) fail(form, "body needs a name");
  b.name = want_sym(form.items[1], "body name");
  size_t k = 2;
  while (k < form.items.size()) {
    const SExpr& it = form.items[k];
    if (!is_kw(it)) fail(it, "expected a keyword in a body form");
    if (k + 1 >= form.items.size()) fail(it, it.text + " needs a value");
    const SExpr& v = form.items[k + 1];
    if (it.text == ":at") b.at = want_point(v, "location");
    else if (it.text == ":posture") b.posture = want_sym(v, "posture name");
    else if (it.text == ":facing") b.facing = want_num(v, "facing");
    else if (it.text == ":scale") b.scale = want_num(v, "scale");
    else if (it.text == ":scene") b.scene = want_sym(v, "scene name");
    else fail(it, "unknown body keyword '" + it.text + "'");
    k += 2;
  }
  if (b.facing != 1 && b.facing != -1) fail(form, ":facing must be 1 or -1");
  if (b.scale <= 0) fail(form, ":scale must be positive");
  return b;
}

Ask parse_ask_form(const SExpr& form) {
  Ask a;
  if (form.items.size() < 2) fail(form, "ask needs a query kind");
  std::string kind = want_sym(form.items[1], "query kind");
  size_t k = 2;
  if (kind == "recognize") {
    a.kind = Ask::Recognize;
    if (form.items.size() < 3 || is_kw(form.items[2]))
      fail(form, "(ask recognize <function> ...) expected");
    a.function = want_sym(form.items[2], "function name");
    k = 3;
  } else if (kind == "experiment") {
    a.kind = Ask::Experiment;
  } else if (kind == "chair") {
    a.kind = Ask::Chair;
  } else if (kind == "plan") {
    a.kind = Ask::Plan;
  } else if (kind == "propagate") {
    a.kind = Ask::Propagate;
  } else {
    fail(form.items[1], "unknown query kind '" + kind + "'");
  }
  while (k < form.items.size()) {
    const SExpr& it = form.items[k];
    if (is_kw(it)) {
      if (k + 1 >= form.items.size()) fail(it, it.text + " needs a value");
      const SExpr& v = form.items[k + 1];
      if (it.text == ":scene") a.scene = want_sym(v, "scene name");
      else if (it.text == ":part") a.part = want_sym(v, "part name");
      else if (it.text == ":body") a.body = want_sym(v, "body name");
      else if (it.text == ":chain") a.chain = want_sym(v, "chain name");
      else if (it.text == ":assembly" || it.text == ":kb") {
        if (v.kind != SExpr::List) fail(v, it.text + " takes a list of names");
        auto& out = it.text == ":assembly" ? a.assembly : a.kb;
        for (auto& n : v.items) out.push_back(want_sym(n, "name"));
      } else {
        fail(it, "unknown ask keyword '" + it.text + "'");
      }
      k += 2;
    } else if (it.kind == SExpr::List && it.head() == "goal") {
      if (it.items.size() != 2) fail(it, "(goal ...) takes one graph form");
      a.goal = compile_single(it.items[1]);
      a.goal.name = "goal";
      k++;
    } else if (it.kind == SExpr::List && it.head() == "clamp") {
      if (it.items.size() != 3) fail(it, "(clamp from to) expected");
      a.clamps.emplace_back(want_sym(it.items[1], "stage name"),
                            want_sym(it.items[2], "stage name"));
      k++;
    } else {
      fail(it, "unexpected item in an ask form");
    }
  }
  if (a.kind == Ask::Recognize && a.scene.empty()) fail(form, "recognize needs :scene");
  if (a.kind == Ask::Experiment && (a.scene.empty() || a.part.empty()))
    fail(form, "experiment needs :scene and :part");
  if (a.kind == Ask::Chair && (a.scene.empty() || a.body.empty()))
    fail(form, "chair needs :scene and :body");
  if (a.kind == Ask::Plan && (a.scene.empty() || a.goal.nodes.empty()))
    fail(form, "plan needs :scene and a (goal ...)");
  if (a.kind == Ask::Propagate && a.chain.empty()) fail(form, "propagate needs :chain");
  return a;
}

/// Everything pass 2 checks: declared names per namespace plus where each
/// declaration come from (for error positions).
struct DocNames {
  std::set<std::string> graphs; // concepts, scripts, functions share elab space
  std::set<std::string> concepts, functions, scripts, scenes, chains, bodies;
  std::set<std::string> anchors; // scene names, body ids, marker ids

  void unique(const SExpr& at, std::set<std::string>& space, const std::string& n,
              const char* what) {
    if (!space.insert(n).second)
      fail(at, std::string("duplicate ") + what + " name '" + n + "'");
  }
};

void check_graph_refs(const ConceptGraph& g, const DocNames& names, bool have_scenes,
                      const std::string& where) {
  for (auto& n : g.nodes) {
    if (n.ground.kind == Grounding::ElabRef && !names.graphs.count(n.ground.name))
      throw UnknownSymbol(where + ": elaboration target '" + n.ground.name +
                          "' is not declared in this document");
    if (n.kind == NodeKind::ConceptRef && !n.is_variable() && !names.graphs.count(n.label))
      throw UnknownSymbol(where + ": reference '" + n.label +
                          "' is not declared in this document");
    if (n.ground.kind == Grounding::AnchorRef && have_scenes &&
        !names.anchors.count(n.ground.name))
      throw UnknownSymbol(where + ": anchor '" + n.ground.name +
                          "' names no scene, body or marker in this document");
  }
}

void check_valid(const ConceptGraph& g, const std::string& where) {
  auto rep = validate(g);
  if (!rep.ok())
    throw ValidationFailure(where + ": " + rep.errors().front());
}

} // namespace

std::string ask_kind_name(Ask::Kind k) {
  switch (k) {
    case Ask::Recognize: return "recognize";
    case Ask::Experiment: return "experiment";
    case Ask::Chair: return "chair";
    case Ask::Plan: return "plan";
    case Ask::Propagate: return "propagate";
  }
  return "?";
}

ConceptGraph graph_from_sexpr(const SExpr& form) { return compile_single(form); }

Scene scene_from_sexpr(const SExpr& form) {
  Scene s;
  if (form.items.size() < 2) fail(form, "scene needs a name");
  s.name = want_sym(form.items[1], "scene name");
  for (size_t k = 2; k < form.items.size(); k++) {
    const SExpr& it = form.items[k];
    std::string h = it.head();
    if (h == "ground") {
      if (it.items.size() != 2) fail(it, "(ground y) expected");
      s.ground_y = want_num(it.items[1], "ground height");
    } else if (h == "obj") {
      if (it.items.size() < 3) fail(it, "(obj id shape ...) expected");
      RigidBody b;
      b.id = want_sym(it.items[1], "object id");
      if (s.find(b.id)) fail(it, "duplicate object id '" + b.id + "'");
      if (it.items[2].kind != SExpr::List) fail(it.items[2], "expected a shape form");
      b.shape = parse_shape(it.items[2], b.id);
      size_t j = 3;
      while (j < it.items.size()) {
        const SExpr& cl = it.items[j];
        if (is_kw(cl)) {
          const std::string& kw = cl.text;
          if (kw == ":fixed") {
            b.fixed = true;
            j++;
            continue;
          }
          if (j + 1 >= it.items.size()) fail(cl, kw + " needs a value");
          const SExpr& v = it.items[j + 1];
          if (kw == ":at") b.at = want_point(v, "location");
          else if (kw == ":angle") b.angle = want_num(v, "angle");
          else if (kw == ":hardness") b.mat.hardness = ord_from_string(want_sym(v, "ordinal"));
          else if (kw == ":weight") b.mat.weight = ord_from_string(want_sym(v, "ordinal"));
          else if (kw == ":front") b.heading = want_point(v, "direction");
          else if (kw == ":tags") {
            if (v.kind != SExpr::List) fail(v, ":tags takes a list");
            for (auto& t : v.items) b.tags.insert(want_sym(t, "tag"));
          } else {
            fail(cl, "unknown object keyword '" + kw + "'");
          }
          j += 2;
        } else if (cl.kind == SExpr::List && cl.head() == "dent") {
          if (cl.items.size() != 3) fail(cl, "(dent (poly ...) profile) expected");
          Concavity d;
          d.region = parse_shape(cl.items[1], b.id + " dent");
          d.profile = want_sym(cl.items[2], "profile id");
          b.dents.push_back(std::move(d));
          j++;
        } else {
          fail(cl, "unexpected item in an object form");
        }
      }
      s.bodies.push_back(std::move(b));
    } else if (h == "attach") {
      if (it.items.size() < 3) fail(it, "(attach a b) expected");
      Attachment at;
      at.a = want_sym(it.items[1], "object id");
      at.b = want_sym(it.items[2], "object id");
      for (size_t j = 3; j < it.items.size(); j++) {
        if (it.items[j].is_atom(":continuum")) at.continuum = true;
        else fail(it.items[j], "only :continuum is valid here");
      }
      s.attachments.push_back(std::move(at));
    } else if (h == "marker") {
      if (it.items.size() != 3) fail(it, "(marker id (x y)) expected");
      s.markers.push_back({want_sym(it.items[1], "marker id"), want_point(it.items[2], "location")});
    } else {
      fail(it, "unknown scene clause '" + h + "'");
    }
  }
  for (auto& at : s.attachments)
    if (!s.find(at.a) || !s.find(at.b))
      fail(form, "attachment " + at.a + "-" + at.b + " names an unknown object");
  return s;
}

SourceDocument parse_document(const std::string& text, const std::string& path) {
  SourceDocument doc;
  doc.path = path;
  auto forms = read_sexprs(text, path);
  DocNames names;
  std::vector<const SExpr*> origins;

  for (auto& form : forms) {
    std::string h = form.head();
    if (h.empty()) fail(form, "expected a top-level form");
    if (form.items.size() < 2) fail(form, "(" + h + " ...) needs a name");
    if (h == "concept") {
      ConceptGraph g = compile_concept_body(form);
      names.unique(form, names.graphs, g.name, "declaration");
      names.concepts.insert(g.name);
      doc.decls.emplace_back(std::move(g));
    } else if (h == "script" || h == "mes") {
      Script s = parse_script_form(form, h == "mes");
      names.unique(form, names.graphs, s.name, "declaration");
      names.scripts.insert(s.name);
      doc.decls.emplace_back(std::move(s));
    } else if (h == "scene") {
      Scene s = scene_from_sexpr(form);
      names.unique(form, names.scenes, s.name, "scene");
      names.anchors.insert(s.name);
      for (auto& b : s.bodies) names.anchors.insert(b.id);
      for (auto& m : s.markers) names.anchors.insert(m.id);
      doc.decls.emplace_back(std::move(s));
    } else if (h == "function") {
      FunctionDefinition f = parse_function_form(form);
      names.unique(form, names.graphs, f.name, "declaration");
      names.functions.insert(f.name);
      doc.decls.emplace_back(std::move(f));
    } else if (h == "body") {
      BodyDecl b = parse_body_form(form);
      names.unique(form, names.bodies, b.name, "body");
      doc.decls.emplace_back(std::move(b));
    } else if (h == "chain") {
      QualChain c = parse_chain_form(form);
      names.unique(form, names.chains, c.name, "chain");
      auto errs = check_chain(c);
      if (!errs.empty()) throw ValidationFailure("chain '" + c.name + "': " + errs.front());
      doc.decls.emplace_back(std::move(c));
    } else if (h == "ask") {
      doc.decls.emplace_back(parse_ask_form(form));
    } else {
      fail(form, "unknown top-level form '" + h + "'");
    }
    origins.push_back(&form);
  }

  // second pass: validation plus name resolution (forward references fine)
  bool have_scenes = !names.scenes.empty();
  auto check = [&](const ConceptGraph& g, const std::string& where) {
    check_valid(g, where);
    check_graph_refs(g, names, have_scenes, where);
  };
  auto scene_of = [&](const std::string& name) -> const Scene& {
    const Scene* s = doc.find_scene(name);
    if (!s) throw UnknownSymbol("scene '" + name + "' is not declared in this document");
    return *s;
  };
  auto in_scene = [](const Scene& s, const std::string& n) {
    if (s.find(n)) return true;
    for (auto& b : s.bodies)
      if (b.has_tag(n)) return true;
    return false;
  };

  for (size_t i = 0; i < doc.decls.size(); i++) {
    auto& d = doc.decls[i];
    if (auto* g = std::get_if<ConceptGraph>(&d)) {
      check(*g, "concept '" + g->name + "'");
    } else if (auto* s = std::get_if<Script>(&d)) {
      auto errs = check_script(*s);
      if (!errs.empty()) throw ValidationFailure("script '" + s->name + "': " + errs.front());
      for (auto& e : s->entry_conditions) check(e, "script '" + s->name + "' entry");
      for (auto& r : s->results) check(r, "script '" + s->name + "' result");
      for (auto& sc : s->scenes)
        for (auto& ev : sc.events) check(ev.graph, "event '" + ev.name + "' of '" + s->name + "'");
    } else if (auto* sc = std::get_if<Scene>(&d)) {
      auto errs = check_scene(*sc);
      if (!errs.empty()) throw ValidationFailure("scene '" + sc->name + "': " + errs.front());
    } else if (auto* f = std::get_if<FunctionDefinition>(&d)) {
      check(f->fact, "function '" + f->name + "' fact");
      if (!f->cfact.nodes.empty()) check(f->cfact, "function '" + f->name + "' counterfactual");
      if (f->has_motivation()) check(f->motivation, "function '" + f->name + "' motivation");
      if (!f->mes.empty() && !names.scripts.count(f->mes))
        throw UnknownSymbol("function '" + f->name + "': script '" + f->mes +
                            "' is not declared in this document");
    } else if (auto* b = std::get_if<BodyDecl>(&d)) {
      if (!b->scene.empty()) scene_of(b->scene);
    } else if (auto* a = std::get_if<Ask>(&d)) {
      const SExpr& at = *origins[i];
      if (!a->scene.empty()) scene_of(a->scene);
      if (a->kind == Ask::Recognize && !names.functions.count(a->function))
        fail(at, "function '" + a->function + "' is not declared in this document");
      if (a->kind == Ask::Experiment && !in_scene(scene_of(a->scene), a->part))
        fail(at, "part '" + a->part + "' is not in scene '" + a->scene + "'");
      if (a->kind == Ask::Chair) {
        if (!names.bodies.count(a->body)) fail(at, "body '" + a->body + "' is not declared");
        for (auto& m : a->assembly)
          if (!in_scene(scene_of(a->scene), m))
            fail(at, "assembly member '" + m + "' is not in scene '" + a->scene + "'");
      }
      if (a->kind == Ask::Plan) {
        check(a->goal, "plan goal");
        for (auto& n : a->kb)
          if (!names.functions.count(n) && !names.concepts.count(n))
            fail(at, "kb entry '" + n + "' is not declared in this document");
      }
      if (a->kind == Ask::Propagate) {
        const QualChain* c = doc.find_chain(a->chain);
        if (!c) fail(at, "chain '" + a->chain + "' is not declared in this document");
        for (auto& [cf, ct] : a->clamps) {
          bool found = false;
          for (auto& e : c->edges)
            if (e.from == cf && e.to == ct) found = true;
          if (!found) fail(at, "clamp " + cf + " -> " + ct + " matches no edge of '" + a->chain + "'");
        }
      }
    }
  }
  return doc;
}

SourceDocument parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

Scene parse_scene(const std::string& text) {
  SourceDocument doc = parse_document(text);
  for (auto& d : doc.decls)
    if (auto* s = std::get_if<Scene>(&d)) return *s;
  throw ParseError("document declares no scene", 1, 1);
}

const ConceptGraph* SourceDocument::find_concept(const std::string& name) const {
  for (auto& d : decls)
    if (auto* g = std::get_if<ConceptGraph>(&d); g && g->name == name) return g;
  return nullptr;
}
const Script* SourceDocument::find_script(const std::string& name) const {
  for (auto& d : decls)
    if (auto* s = std::get_if<Script>(&d); s && s->name == name) return s;
  return nullptr;
}
const Scene* SourceDocument::find_scene(const std::string& name) const {
  for (auto& d : decls)
    if (auto* s = std::get_if<Scene>(&d); s && s->name == name) return s;
  return nullptr;
}
const FunctionDefinition* SourceDocument::find_function(const std::string& name) const {
  for (auto& d : decls)
    if (auto* f = std::get_if<FunctionDefinition>(&d); f && f->name == name) return f;
  return nullptr;
}
const BodyDecl* SourceDocument::find_body(const std::string& name) const {
  for (auto& d : decls)
    if (auto* b = std::get_if<BodyDecl>(&d); b && b->name == name) return b;
  return nullptr;
}
const QualChain* SourceDocument::find_chain(const std::string& name) const {
  for (auto& d : decls)
    if (auto* c = std::get_if<QualChain>(&d); c && c->name == name) return c;
  return nullptr;
}

} // namespace cdp
