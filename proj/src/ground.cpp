#include "cdplus/ground.hpp"

#include <algorithm>
#include <cmath>

#include "cdplus/errors.hpp"

namespace cdp {

namespace {

void add(std::vector<GroundEntry>& v, const char* name, const char* cat, int arity,
         bool near_ground, bool evaluable = false) {
  v.push_back(GroundEntry{name, cat, arity, near_ground, evaluable});
}

} // namespace

GroundConceptRegistry::GroundConceptRegistry() {
  auto& v = entries_;
  // ground level
  add(v, "Time", "temporal", 0, false);
  add(v, "Present", "temporal", 0, false);
  add(v, "Point", "spatial", 0, false);
  add(v, "Location", "spatial", 1, false);
  add(v, "Orientation", "spatial", 1, false);
  add(v, "Direction", "spatial", 1, false);
  add(v, "Face", "spatial", 1, false);
  add(v, "Volume", "spatial", 1, false);
  add(v, "CM", "part-label", 1, false, true);
  add(v, "Part-of", "part-label", 2, false);
  add(v, "Top", "part-label", 1, false, true);
  add(v, "Bottom", "part-label", 1, false, true);
  add(v, "Side", "part-label", 1, false, true);
  add(v, "Length", "part-label", 1, false);
  add(v, "Width", "part-label", 1, false);
  add(v, "At", "spatial-relation", 2, false, true);
  add(v, "Next-to", "spatial-relation", 2, false, true);
  add(v, "Near", "spatial-relation", 2, false, true);
  add(v, "Far", "spatial-relation", 2, false, true);
  add(v, "Above", "spatial-relation", 2, false, true);
  add(v, "Below", "spatial-relation", 2, false, true);
  add(v, "On", "spatial-relation", 2, false, true);
  add(v, "Parallel", "spatial-relation", 2, false, true);
  add(v, "Align", "spatial-relation", 2, false, true);
  add(v, "Inside", "spatial-relation", 2, false, true);
  add(v, "Outside", "spatial-relation", 2, false, true);
  add(v, "Beyond", "spatial-relation", 2, false, true);
  add(v, "Gravity", "field", 0, false);
  add(v, "Ground", "field", 0, false);
  add(v, "Sky", "field", 0, false);
  add(v, "Up", "field", 0, false);
  add(v, "Down", "field", 0, false);
  add(v, "Horizontal", "field", 1, false, true);
  add(v, "Vertical", "field", 1, false, true);
  add(v, "Height", "field", 1, false);
  add(v, "Food", "need", 0, false);
  add(v, "Energy-Supply", "need", 0, false);
  add(v, "Safety", "need", 0, false);
  add(v, "Companionship", "need", 0, false);
  add(v, "Competence", "need", 0, false);
  add(v, "Beauty-Appreciation", "need", 0, false);
  add(v, "Neatness", "need", 0, false);
  add(v, "Pleased", "emotion", 1, false);
  add(v, "Happy", "emotion", 1, false);
  add(v, "Sad", "emotion", 1, false);
  add(v, "Anger", "emotion", 1, false);
  add(v, "Colors", "sensation", 0, false);
  add(v, "Tones", "sensation", 0, false);
  add(v, "Tastes", "sensation", 0, false);
  add(v, "Sweetness", "sensation", 0, false);
  add(v, "Saltiness", "sensation", 0, false);
  add(v, "Temperature", "sensation", 1, false);
  add(v, "Pain", "sensation", 1, false);
  add(v, "Itch", "sensation", 1, false);
  add(v, "State", "meta", 1, false);
  add(v, "Same", "meta", 2, false);
  add(v, "Different", "meta", 2, false);
  add(v, "Greater", "meta", 2, false);
  add(v, "Smaller", "meta", 2, false);
  add(v, "Difference", "meta", 2, false);
  add(v, "Any", "meta", 0, false);
  add(v, "All", "meta", 0, false);
  add(v, "Materialize", "meta", 1, false);
  add(v, "Dematerialize", "meta", 1, false);
  add(v, "Contact", "spatial-relation", 2, false, true);
  add(v, "Look-At", "mental", 2, false);
  // near ground level
  add(v, "After", "temporal", 2, true);
  add(v, "Before", "temporal", 2, true);
  add(v, "Line", "spatial", 0, true);
  add(v, "Trajectory", "spatial", 1, true);
  add(v, "Object", "spatial", 0, true);
  add(v, "Boundary", "part-label", 1, true, true);
  add(v, "Bulk", "part-label", 1, true, true);
  add(v, "Distance", "spatial", 2, true);
  add(v, "Shape", "spatial", 1, true);
  add(v, "Blunt", "scalar", 1, true, true);
  add(v, "Sharp", "scalar", 1, true, true);
  add(v, "Long-Axis", "part-label", 1, true);
  add(v, "Short-Axis", "part-label", 1, true);
  add(v, "Front", "part-label", 1, true, true);
  add(v, "Back", "part-label", 1, true, true);
  add(v, "Long", "scalar", 1, true, true);
  add(v, "Short", "scalar", 1, true, true);
  add(v, "Hard", "scalar", 1, true, true);
  add(v, "Soft", "scalar", 1, true, true);
  add(v, "Heavy", "scalar", 1, true, true);
  add(v, "Light", "scalar", 1, true, true);
  add(v, "Alive", "body-state", 1, true);
  add(v, "Energetic", "body-state", 1, true);
  add(v, "Comfortable", "body-state", 1, true);
  add(v, "Weak", "body-state", 1, true);
  add(v, "Hurt", "body-state", 1, true);
  add(v, "Sick", "body-state", 1, true);
  add(v, "Dead", "body-state", 1, true);
  add(v, "Change", "meta", 1, true);
  add(v, "No-Change", "meta", 1, true);
  add(v, "Activity", "meta", 0, true);
  add(v, "PTRANS", "motion", 0, true);
  add(v, "Move", "motion", 0, true);
  add(v, "Rapid", "motion", 0, true);
  add(v, "Fast", "motion", 0, true);
  add(v, "Slow", "motion", 0, true);
  add(v, "PROTATE", "motion", 0, true);
  add(v, "Through", "spatial-relation", 2, true);
  add(v, "Over", "spatial-relation", 2, true);
  add(v, "Force", "motion", 0, true);
  add(v, "Move-Toward", "motion", 2, true);
  add(v, "Move-Away", "motion", 2, true);
  add(v, "Orient-Toward", "motion", 2, true);
  add(v, "Orient-Away", "motion", 2, true);
  add(v, "Opposite", "meta", 2, true);
  add(v, "Attach", "spatial-relation", 2, true, true);
  add(v, "EXPANSION", "shape-change", 1, true);
  add(v, "CONTRACTION", "shape-change", 1, true);
  add(v, "EXTENSION", "shape-change", 1, true);
  add(v, "EXTRUSION", "shape-change", 1, true);
  add(v, "INDENTATION", "shape-change", 1, true);
  add(v, "Cause", "meta", 2, true);
  add(v, "UNTIL", "meta", 2, true);
  add(v, "MBUILD", "mental", 0, true);
  add(v, "MTRANS", "mental", 0, true);
  add(v, "BPTRANS", "motion", 0, true);
  add(v, "EXTRANS", "meta", 0, true);
  add(v, "MEXPAND", "mental", 0, true);
  add(v, "MCONTRACT", "mental", 0, true);
  add(v, "MEXTEND", "mental", 0, true);
  add(v, "MEXTRUDE", "mental", 0, true);
  add(v, "MINDENT", "mental", 0, true);
  add(v, "Turn-Body", "body-action", 0, true);
  add(v, "Lift-Left-Thigh", "body-action", 0, true);
  add(v, "Lift-Right-Thigh", "body-action", 0, true);
  add(v, "Swing-Left-Leg", "body-action", 0, true);
  add(v, "Swing-Right-Leg", "body-action", 0, true);
  add(v, "Lift-Left-Arm", "body-action", 0, true);
  add(v, "Lift-Right-Arm", "body-action", 0, true);
  add(v, "Grasp", "body-action", 0, true);
  add(v, "Spread-Fingers", "body-action", 0, true);
  add(v, "Point-Finger", "body-action", 0, true);
  std::sort(entries_.begin(), entries_.end(),
            [](const GroundEntry& a, const GroundEntry& b) { return a.name < b.name; });
}

const GroundConceptRegistry& GroundConceptRegistry::instance() {
  static const GroundConceptRegistry r;
  return r;
}

bool GroundConceptRegistry::contains(const std::string& name) const {
  return find(name) != nullptr;
}

const GroundEntry* GroundConceptRegistry::find(const std::string& name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const GroundEntry& e, const std::string& n) { return e.name < n; });
  if (it != entries_.end() && it->name == name) return &*it;
  return nullptr;
}

std::vector<GroundEntry> GroundConceptRegistry::entries() const { return entries_; }

namespace {

struct Entity {
  std::optional<Polygon> poly;
  Vec2 point{0, 0};
  const RigidBody* body = nullptr;

  Vec2 center() const { return poly ? poly->centroid() : point; }
  double diag() const { return poly ? poly->diagonal() : 0.0; }
};

Entity resolve(const Scene& s, const std::string& name) {
  if (auto* b = s.find(name)) return Entity{b->world(), {0, 0}, b};
  if (auto* m = s.find_marker(name)) return Entity{std::nullopt, m->at, nullptr};
  throw UnknownSymbol("no body or marker named '" + name + "'");
}

double gap(const Entity& a, const Entity& b) {
  if (a.poly && b.poly) return polygon_distance(*a.poly, *b.poly);
  if (a.poly) {
    double best = 1e300;
    for (auto& e : a.poly->edges()) best = std::min(best, segment_point_distance(e, b.point));
    if (a.poly->contains(b.point)) return 0;
    return best;
  }
  if (b.poly) return gap(b, a);
  return norm(a.center() - b.center());
}

double mean_diag(const Entity& a, const Entity& b) {
  double d = (a.diag() + b.diag()) / 2;
  return d > 0 ? d : 1.0;
}

double long_axis_angle(const Polygon& p) {
  // direction of the widest extent among edge directions
  double best_len = -1;
  double best_ang = 0;
  for (auto& e : p.edges()) {
    double len = norm(e.b - e.a);
    if (len > best_len) {
      best_len = len;
      Vec2 d = normalized(e.b - e.a);
      best_ang = std::atan2(d.y, d.x) * 180.0 / M_PI;
    }
  }
  // fold into [0, 180)
  while (best_ang < 0) best_ang += 180;
  while (best_ang >= 180) best_ang -= 180;
  return best_ang;
}

double aspect_ratio(const Polygon& p) {
  // extent along the long axis over extent across it
  double ang = long_axis_angle(p);
  Vec2 u = rotated({1, 0}, ang), v = perp(u);
  double ulo = 1e300, uhi = -1e300, vlo = 1e300, vhi = -1e300;
  for (auto& pt : p.pts) {
    ulo = std::min(ulo, dot(pt, u));
    uhi = std::max(uhi, dot(pt, u));
    vlo = std::min(vlo, dot(pt, v));
    vhi = std::max(vhi, dot(pt, v));
  }
  double a = uhi - ulo, b = vhi - vlo;
  return b > 0 ? a / b : 1e300;
}

bool angle_close(double a, double b, double tol) {
  double d = std::abs(a - b);
  while (d > 90) d = std::abs(d - 180);
  return d <= tol;
}

bool above(const Entity& a, const Entity& b) {
  if (!a.poly || !b.poly) return a.center().y > b.center().y;
  return intersect(a.poly->x_range(), b.poly->x_range()).has_value() &&
         a.center().y > b.center().y;
}

bool inside(const Entity& a, const Entity& b) {
  if (!b.poly) return false;
  auto pts = a.poly ? a.poly->pts : std::vector<Vec2>{a.point};
  bool all_in = true;
  for (auto& p : pts)
    if (!b.poly->contains(p, 1e-9)) all_in = false;
  if (all_in) return true;
  if (b.body) {
    for (auto& dent : b.body->dents) {
      Polygon w = transformed(dent.region, b.body->at, b.body->angle);
      bool in_dent = true;
      for (auto& p : pts)
        if (!w.contains(p, 1e-9)) in_dent = false;
      if (in_dent) return true;
    }
  }
  return false;
}

} // namespace

std::vector<double> vertex_angles(const Polygon& p) {
  std::vector<double> out;
  size_t n = p.pts.size();
  for (size_t i = 0; i < n; i++) {
    Vec2 prev = p.pts[(i + n - 1) % n], cur = p.pts[i], next = p.pts[(i + 1) % n];
    Vec2 u = normalized(prev - cur), v = normalized(next - cur);
    double c = std::clamp(dot(u, v), -1.0, 1.0);
    out.push_back(std::acos(c) * 180.0 / M_PI);
  }
  return out;
}

bool body_is_sharp(const RigidBody& b, double max_tip_deg) {
  for (double a : vertex_angles(b.shape))
    if (a <= max_tip_deg) return true;
  return false;
}

bool eval_relation(const Scene& s, const std::string& symbol,
                   const std::vector<std::string>& args, const Config& cfg) {
  const GroundEntry* e = GroundConceptRegistry::instance().find(symbol);
  if (!e) throw UnknownSymbol("'" + symbol + "' is not a registered ground concept");
  if (!e->evaluable)
    throw UnknownSymbol("'" + symbol + "' has no scene evaluator");
  auto need = [&](size_t n) {
    if (args.size() != n)
      throw Error(symbol + " expects " + std::to_string(n) + " arguments");
  };

  if (symbol == "At") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    double thr = std::max(0.25 * mean_diag(a, b), cfg.contact_eps);
    return norm(a.center() - b.center()) <= thr;
  }
  if (symbol == "Next-to") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    if (!a.poly || !b.poly) return gap(a, b) <= 0.25 * mean_diag(a, b);
    bool beside = intersect(a.poly->y_range(), b.poly->y_range()).has_value();
    return beside && gap(a, b) <= 0.25 * mean_diag(a, b);
  }
  if (symbol == "Near") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    return gap(a, b) <= cfg.near_mult * mean_diag(a, b);
  }
  if (symbol == "Far" || symbol == "Beyond") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    return gap(a, b) >= cfg.far_mult * mean_diag(a, b);
  }
  if (symbol == "Above") {
    need(2);
    return above(resolve(s, args[0]), resolve(s, args[1]));
  }
  if (symbol == "Below") {
    need(2);
    return above(resolve(s, args[1]), resolve(s, args[0]));
  }
  if (symbol == "Contact") {
    need(2);
    return gap(resolve(s, args[0]), resolve(s, args[1])) <= cfg.contact_eps;
  }
  if (symbol == "On") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    if (!above(a, b)) return false;
    for (auto& c : supports_of(s, args[0], cfg))
      if (c.lower == args[1]) return true;
    return false;
  }
  if (symbol == "Parallel") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    if (!a.poly || !b.poly) throw Error("Parallel needs two bodies");
    return angle_close(long_axis_angle(*a.poly), long_axis_angle(*b.poly), cfg.angle_tol_deg);
  }
  if (symbol == "Align") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    return std::abs(a.center().x - b.center().x) <= 0.05 * mean_diag(a, b);
  }
  if (symbol == "Inside") {
    need(2);
    return inside(resolve(s, args[0]), resolve(s, args[1]));
  }
  if (symbol == "Outside") {
    need(2);
    Entity a = resolve(s, args[0]), b = resolve(s, args[1]);
    if (inside(a, b)) return false;
    if (a.poly && b.poly) return !polygons_overlap(*a.poly, *b.poly, cfg.contact_eps);
    return true;
  }
  if (symbol == "Horizontal" || symbol == "Vertical") {
    need(1);
    Entity a = resolve(s, args[0]);
    if (!a.poly) throw Error(symbol + " needs a body");
    double ang = long_axis_angle(*a.poly);
    return angle_close(ang, symbol == "Horizontal" ? 0 : 90, cfg.angle_tol_deg);
  }
  if (symbol == "Hard" || symbol == "Soft" || symbol == "Heavy" || symbol == "Light") {
    need(1);
    Entity a = resolve(s, args[0]);
    if (!a.body) throw Error(symbol + " needs a body");
    if (symbol == "Hard") return a.body->mat.hardness == Ord::High;
    if (symbol == "Soft") return a.body->mat.hardness == Ord::Low;
    if (symbol == "Heavy") return a.body->mat.weight == Ord::High;
    return a.body->mat.weight == Ord::Low;
  }
  if (symbol == "Long" || symbol == "Short") {
    need(1);
    Entity a = resolve(s, args[0]);
    if (!a.poly) throw Error(symbol + " needs a body");
    double r = aspect_ratio(*a.poly);
    return symbol == "Long" ? r >= 2.5 : r <= 1.5;
  }
  if (symbol == "Sharp" || symbol == "Blunt") {
    need(1);
    Entity a = resolve(s, args[0]);
    if (!a.body) throw Error(symbol + " needs a body");
    return symbol == "Sharp" ? body_is_sharp(*a.body) : !body_is_sharp(*a.body, 60.0);
  }
  if (symbol == "Attach") {
    need(2);
    for (auto& at : s.attachments)
      if ((at.a == args[0] && at.b == args[1]) || (at.a == args[1] && at.b == args[0]))
        return true;
    return false;
  }
  throw UnknownSymbol("'" + symbol + "' has no scene evaluator");
}

PartRegion part_region(const Scene& s, const std::string& body, const std::string& label,
                       const Config& cfg) {
  const RigidBody* b = s.find(body);
  if (!b) throw UnknownSymbol("no body named '" + body + "'");
  Polygon w = b->world();
  PartRegion out{body, label, {}, std::nullopt};
  auto edges = w.edges();

  auto pick = [&](auto pred) {
    for (size_t i = 0; i < edges.size(); i++)
      if (pred(w.edge_normal(i))) out.segs.push_back(edges[i]);
  };

  if (label == "Top") pick([](Vec2 n) { return n.y > std::abs(n.x); });
  else if (label == "Bottom") pick([](Vec2 n) { return -n.y > std::abs(n.x); });
  else if (label == "Side") pick([](Vec2 n) { return std::abs(n.x) >= std::abs(n.y); });
  else if (label == "Boundary") out.segs = edges;
  else if (label == "Bulk" ) out.segs = edges; // interior: boundary stands in
  else if (label == "CM") out.point = w.centroid();
  else if (label == "Front" || label == "Back") {
    if (!b->heading) throw Error("body '" + body + "' has no heading for " + label);
    Vec2 h = normalized(rotated(*b->heading, b->angle));
    if (label == "Back") h = h * -1.0;
    pick([&](Vec2 n) { return dot(n, h) > std::cos(60.0 * M_PI / 180.0); });
  } else if (label == "End1" || label == "End2" || label == "Sharp-End" || label == "Blunt-End") {
    // ends along the long axis
    double ang = long_axis_angle(w);
    Vec2 u = rotated({1, 0}, ang);
    double lo = 1e300, hi = -1e300;
    for (auto& p : w.pts) {
      lo = std::min(lo, dot(p, u));
      hi = std::max(hi, dot(p, u));
    }
    double span = hi - lo;
    auto end_sel = [&](bool high_end) {
      for (size_t i = 0; i < edges.size(); i++) {
        double m = (dot(edges[i].a, u) + dot(edges[i].b, u)) / 2;
        bool at_high = (m - lo) > 0.75 * span;
        bool at_low = (m - lo) < 0.25 * span;
        if (high_end ? at_high : at_low) out.segs.push_back(edges[i]);
      }
    };
    if (label == "End1") end_sel(false);
    else if (label == "End2") end_sel(true);
    else {
      // the sharpest vertex marks the sharp end; blunt is the opposite end
      auto angles = vertex_angles(b->shape);
      size_t sharpest = 0;
      for (size_t i = 1; i < angles.size(); i++)
        if (angles[i] < angles[sharpest]) sharpest = i;
      Vec2 tip = b->at + rotated(b->shape.pts[sharpest], b->angle);
      bool tip_high = dot(tip, u) > (lo + hi) / 2;
      bool high_end = label == "Sharp-End" ? tip_high : !tip_high;
      end_sel(high_end);
      if (label == "Sharp-End") {
        out.point = tip;
      } else {
        // farthest vertex from the tip along the long axis
        size_t far = 0;
        double best = -1e300;
        for (size_t i = 0; i < w.pts.size(); i++) {
          double d = high_end ? dot(w.pts[i], u) : -dot(w.pts[i], u);
          if (d > best) { best = d; far = i; }
        }
        out.point = w.pts[far];
      }
    }
  } else {
    throw UnknownSymbol("unknown part label '" + label + "'");
  }
  (void)cfg;
  return out;
}

ParamValue measure(const Scene& s, const std::string& func, const std::string& arg,
                   const Config& cfg) {
  (void)cfg;
  if (func.empty()) {
    // literal: number, ordinal keyword, or plain string
    if (arg == "low" || arg == "mid" || arg == "high") return ord_from_string(arg);
    try {
      size_t used = 0;
      double v = std::stod(arg, &used);
      if (used == arg.size()) return v;
    } catch (const std::exception&) {
    }
    return arg;
  }
  const RigidBody* b = s.find(arg);
  if (!b) {
    const Marker* m = s.find_marker(arg);
    if (m) {
      if (func == "x") return m->at.x;
      if (func == "y") return m->at.y;
      if (func == "cm") return m->at;
      throw UnknownSymbol("'" + func + "' cannot be measured on marker '" + arg + "'");
    }
    throw UnknownSymbol("no body or marker named '" + arg + "'");
  }
  if (func == "hardness") return b->mat.hardness;
  if (func == "weight") return b->mat.weight;
  Polygon w = b->world();
  if (func == "height") return w.y_range().len();
  if (func == "width") return w.x_range().len();
  if (func == "area") return w.area();
  if (func == "top") return w.y_range().hi;
  if (func == "bottom") return w.y_range().lo;
  if (func == "x") return w.centroid().x;
  if (func == "y") return w.centroid().y;
  if (func == "cm") return w.centroid();
  throw UnknownSymbol("unknown measurement '" + func + "'");
}

Comparison compare(const ParamValue& a, const ParamValue& b, double eps) {
  if (a.index() != b.index()) return Comparison::Different;
  if (std::holds_alternative<double>(a)) {
    double x = std::get<double>(a), y = std::get<double>(b);
    if (std::abs(x - y) <= eps) return Comparison::Same;
    return x > y ? Comparison::Greater : Comparison::Smaller;
  }
  if (std::holds_alternative<Ord>(a)) {
    int x = static_cast<int>(std::get<Ord>(a)), y = static_cast<int>(std::get<Ord>(b));
    if (x == y) return Comparison::Same;
    return x > y ? Comparison::Greater : Comparison::Smaller;
  }
  if (std::holds_alternative<Vec2>(a)) {
    Vec2 x = std::get<Vec2>(a), y = std::get<Vec2>(b);
    return norm(x - y) <= eps ? Comparison::Same : Comparison::Different;
  }
  return std::get<std::string>(a) == std::get<std::string>(b) ? Comparison::Same
                                                              : Comparison::Different;
}

double difference(const ParamValue& a, const ParamValue& b) {
  if (a.index() != b.index()) return 1;
  if (std::holds_alternative<double>(a))
    return std::abs(std::get<double>(a) - std::get<double>(b));
  if (std::holds_alternative<Ord>(a))
    return std::abs(static_cast<int>(std::get<Ord>(a)) - static_cast<int>(std::get<Ord>(b)));
  if (std::holds_alternative<Vec2>(a)) return norm(std::get<Vec2>(a) - std::get<Vec2>(b));
  return std::get<std::string>(a) == std::get<std::string>(b) ? 0 : 1;
}

} // namespace cdp
