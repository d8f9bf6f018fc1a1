#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cdplus/errors.hpp"
#include "cdplus/ground.hpp"
#include "cdplus/physics.hpp"
#include "cdplus/reasoner.hpp"

namespace cdp {

namespace {

bool is_var(const std::string& a) { return !a.empty() && a[0] == '?'; }

/// Every variable the definition mentions, sorted.
std::vector<std::string> definition_variables(const FunctionDefinition& def) {
  std::set<std::string> vars;
  for (auto& v : def.fact.variables()) vars.insert(v);
  for (auto& v : def.cfact.variables()) vars.insert(v);
  for (auto& c : def.conditions) {
    for (auto& a : c.args)
      if (is_var(a)) vars.insert(a);
    if (is_var(c.lhs.arg)) vars.insert(c.lhs.arg);
    if (is_var(c.rhs.arg)) vars.insert(c.rhs.arg);
  }
  return {vars.begin(), vars.end()};
}

std::string subst(const std::map<std::string, std::string>& b, const std::string& a) {
  if (!is_var(a)) return a;
  auto it = b.find(a);
  return it == b.end() ? a : it->second;
}

std::string render_param(const Condition::Param& p, const std::string& arg) {
  if (p.func.empty()) return arg;
  return "(" + p.func + " " + arg + ")";
}

bool comparison_ok(const std::string& op, Comparison c) {
  if (op == "ge") return c == Comparison::Same || c == Comparison::Greater;
  if (op == "gt") return c == Comparison::Greater;
  if (op == "le") return c == Comparison::Same || c == Comparison::Smaller;
  if (op == "lt") return c == Comparison::Smaller;
  if (op == "eq") return c == Comparison::Same;
  if (op == "ne") return c != Comparison::Same;
  throw UnknownSymbol("'" + op + "' is not a comparison operator");
}

/// Checks all conditions under the binding; on success appends one
/// justification line per condition.
bool conditions_hold(const Scene& s, const FunctionDefinition& def,
                     const std::map<std::string, std::string>& b,
                     std::vector<std::string>& lines, const Config& cfg) {
  for (auto& c : def.conditions) {
    if (c.kind == Condition::Relation) {
      std::vector<std::string> args;
      for (auto& a : c.args) args.push_back(subst(b, a));
      if (!eval_relation(s, c.symbol, args, cfg)) return false;
      std::string line = "(" + c.symbol;
      for (auto& a : args) line += " " + a;
      lines.push_back(line + ")");
    } else {
      std::string la = subst(b, c.lhs.arg), ra = subst(b, c.rhs.arg);
      ParamValue lv = measure(s, c.lhs.func, la, cfg);
      ParamValue rv = measure(s, c.rhs.func, ra, cfg);
      if (!comparison_ok(c.symbol, compare(lv, rv))) return false;
      lines.push_back("(" + c.symbol + " " + render_param(c.lhs, la) + " " +
                      render_param(c.rhs, ra) + ")");
    }
  }
  return true;
}

/// The bound configuration must survive being left alone: settling the scene
/// may not move any participant.
bool participants_settled(const Scene& s, const std::vector<std::string>& bound,
                          const Config& cfg) {
  Trace t = settle(s, cfg);
  for (auto& ev : t.events) {
    if (ev.kind == EventKind::Stay || ev.kind == EventKind::StayP ||
        ev.kind == EventKind::NoEffect)
      continue;
    for (auto& id : bound) {
      if (ev.subject == id) return false;
      if (std::find(ev.assembly.begin(), ev.assembly.end(), id) != ev.assembly.end())
        return false;
    }
  }
  return true;
}

} // namespace

std::vector<Recognition> recognize(const Scene& s, const FunctionDefinition& def,
                                   const std::map<std::string, std::string>& seed,
                                   const Config& cfg) {
  std::vector<std::string> vars = definition_variables(def);
  for (auto& [v, id] : seed)
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw UnknownSymbol("seed variable " + v + " is not used by function '" + def.name + "'");

  std::vector<std::string> ids;
  for (auto& b : s.bodies) ids.push_back(b.id);
  std::sort(ids.begin(), ids.end());

  std::vector<Recognition> out;
  std::map<std::string, std::string> binding;
  std::set<std::string> used;

  auto emit = [&]() {
    std::vector<std::string> lines;
    if (!conditions_hold(s, def, binding, lines, cfg)) return;
    std::vector<std::string> bound;
    for (auto& [v, id] : binding) bound.push_back(id);
    std::sort(bound.begin(), bound.end());
    bound.erase(std::unique(bound.begin(), bound.end()), bound.end());
    if (!participants_settled(s, bound, cfg)) return;
    std::string settled = "(settled";
    for (auto& id : bound) settled += " " + id;
    lines.push_back(settled + ")");
    out.push_back({binding, std::move(lines)});
  };

  // Depth-first over variables in sorted order, candidates in sorted order:
  // the result list comes out sorted by binding with no further work.
  auto assign = [&](auto&& self, size_t i) -> void {
    if (i == vars.size()) {
      emit();
      return;
    }
    const std::string& v = vars[i];
    auto pinned = seed.find(v);
    if (pinned != seed.end()) {
      if (used.count(pinned->second)) return;
      binding[v] = pinned->second;
      used.insert(pinned->second);
      self(self, i + 1);
      used.erase(pinned->second);
      binding.erase(v);
      return;
    }
    for (auto& id : ids) {
      if (used.count(id)) continue;
      binding[v] = id;
      used.insert(id);
      self(self, i + 1);
      used.erase(id);
      binding.erase(v);
    }
  };
  assign(assign, 0);
  return out;
}

std::vector<Recognition> recognize(const Scene& s, const FunctionDefinition& def,
                                   const Config& cfg) {
  return recognize(s, def, {}, cfg);
}

} // namespace cdp
