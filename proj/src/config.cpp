#include "cdplus/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cdplus/errors.hpp"
#include "cdplus/sexpr.hpp"

namespace cdp {

const Config& Config::defaults() {
  static const Config c;
  return c;
}

Config parse_config(const std::string& text, const std::string& origin) {
  Config cfg;
  auto forms = read_sexprs(text, origin);
  if (forms.size() != 1 || forms[0].head() != "config")
    throw ParseError(origin + ": expected a single (config ...) form", 1, 1);
  for (size_t i = 1; i < forms[0].items.size(); i++) {
    const SExpr& kv = forms[0].items[i];
    if (kv.kind != SExpr::List || kv.items.size() != 2 || kv.items[0].kind != SExpr::Atom)
      throw ParseError(origin + ": expected (key value)", kv.line, kv.col);
    const std::string& key = kv.items[0].text;
    const SExpr& val = kv.items[1];
    if (key == "contact-eps") cfg.contact_eps = val.as_number();
    else if (key == "near-mult") cfg.near_mult = val.as_number();
    else if (key == "far-mult") cfg.far_mult = val.as_number();
    else if (key == "angle-tol-deg") cfg.angle_tol_deg = val.as_number();
    else if (key == "time-long") cfg.time_long_ticks = static_cast<int>(val.as_number());
    else if (key == "plan-depth") cfg.plan_depth_max = static_cast<int>(val.as_number());
    else if (key == "may-prob") cfg.may_prob = val.as_number();
    else if (key == "settle-max") cfg.settle_max_events = static_cast<int>(val.as_number());
    else if (key == "sweep-samples") cfg.sweep_samples = static_cast<int>(val.as_number());
    else if (key == "default-primary-goal") cfg.default_primary_goal = val.text;
    else throw ParseError(origin + ": unknown config key '" + key + "'", kv.line, kv.col);
  }
  return cfg;
}

Config load_config_from_env() {
  const char* path = std::getenv("FUNCREP_CONFIG");
  if (!path) return Config::defaults();
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot open config file ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

} // namespace cdp
