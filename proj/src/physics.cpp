#include "cdplus/physics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cdplus/errors.hpp"
#include "cdplus/ground.hpp"
#include "cdplus/shape_ops.hpp"

namespace cdp {

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Stay: return "Stay";
    case EventKind::StayP: return "StayP";
    case EventKind::FallToGround: return "FallToGround";
    case EventKind::RotateFall: return "RotateFall";
    case EventKind::Topple: return "Topple";
    case EventKind::Crush: return "Crush";
    case EventKind::Indent: return "Indent";
    case EventKind::NoEffect: return "NoEffect";
  }
  return "?";
}

std::string comfort_name(Comfort c) {
  switch (c) {
    case Comfort::Comfortable: return "COMF";
    case Comfort::ReasonablyComfortable: return "R-COMF";
    case Comfort::NotComfortable: return "NOT-COMF";
  }
  return "?";
}

std::string chair_stability_name(ChairStability c) {
  return c == ChairStability::Stable ? "Stable" : "Topple";
}

namespace {

constexpr double kFar = 1e300;

/// y of the polygon's lower (min) or upper (max) boundary at abscissa x.
double envelope_at(const Polygon& p, double x, bool lower) {
  double best = lower ? kFar : -kFar;
  for (const Segment& e : p.edges()) {
    double x0 = std::min(e.a.x, e.b.x), x1 = std::max(e.a.x, e.b.x);
    if (x < x0 - 1e-12 || x > x1 + 1e-12) continue;
    double y;
    if (x1 - x0 < 1e-12) {
      y = lower ? std::min(e.a.y, e.b.y) : std::max(e.a.y, e.b.y);
    } else {
      double t = (x - e.a.x) / (e.b.x - e.a.x);
      y = e.a.y + t * (e.b.y - e.a.y);
    }
    best = lower ? std::min(best, y) : std::max(best, y);
  }
  return best;
}

/// Vertical gap from `above`'s underside to `below`'s top over their
/// shared x-extent; kFar when they don't share one, negative when
/// `below` actually reaches higher (then it's no obstacle to a drop).
double pair_clearance(const Polygon& above, const Polygon& below) {
  auto ox = intersect(above.x_range(), below.x_range());
  if (!ox) return kFar;
  std::vector<double> xs{ox->lo, ox->hi};
  for (const Vec2& v : above.pts)
    if (v.x > ox->lo && v.x < ox->hi) xs.push_back(v.x);
  for (const Vec2& v : below.pts)
    if (v.x > ox->lo && v.x < ox->hi) xs.push_back(v.x);
  double best = kFar;
  for (double x : xs) best = std::min(best, envelope_at(above, x, true) -
                                                envelope_at(below, x, false));
  return best;
}

double drop_distance(const Scene& s, const std::set<std::string>& members) {
  double d = kFar;
  for (const RigidBody& b : s.bodies) {
    if (!members.count(b.id)) continue;
    Polygon w = b.world();
    d = std::min(d, w.y_range().lo - s.ground_y);
    for (const RigidBody& o : s.bodies) {
      if (members.count(o.id)) continue;
      double pc = pair_clearance(w, o.world());
      if (pc < -1e-9) continue; // overhead or beside, not in the way
      d = std::min(d, std::max(pc, 0.0));
    }
  }
  return d;
}

/// Largest rotation (degrees, about `pivot`, falling toward `dir`) that
/// keeps every member off the ground and out of other bodies; nullopt
/// when a half turn finds no obstacle at all.
std::optional<double> free_rotation(const Scene& s, const std::string& lead,
                                    const std::set<std::string>& members, Vec2 pivot,
                                    int dir) {
  auto free_at = [&](double a) {
    Scene probe = apply_protate(s, lead, pivot, -dir * a);
    for (const RigidBody& b : probe.bodies) {
      if (!members.count(b.id)) continue;
      Polygon w = b.world();
      if (w.y_range().lo < probe.ground_y - 1e-9) return false;
      for (const RigidBody& o : probe.bodies) {
        if (members.count(o.id)) continue;
        if (overlap_depth(w, o.world()) > 1e-9) return false;
      }
    }
    return true;
  };
  double prev = 0;
  for (int k = 1; k <= 360; k++) {
    if (!free_at(k)) {
      double lo = prev, hi = k;
      for (int i = 0; i < 80; i++) {
        double mid = (lo + hi) / 2;
        (free_at(mid) ? lo : hi) = mid;
      }
      return lo;
    }
    prev = k;
  }
  return std::nullopt;
}

/// Contact height under boundary abscissa bx: the underside of the
/// member making a level contact whose span is nearest bx.
double pivot_height(const Scene& s, const std::vector<std::string>& comp,
                    const std::set<std::string>& members, double bx,
                    const Config& cfg) {
  double best_dist = kFar, y = s.ground_y;
  for (const std::string& id : comp) {
    for (const SupportContact& c : supports_of(s, id, cfg)) {
      if (!c.lower.empty() && members.count(c.lower)) continue;
      double cx = std::clamp(bx, c.span.lo, c.span.hi);
      double dist = std::abs(cx - bx);
      if (dist < best_dist) {
        best_dist = dist;
        const RigidBody* upper = s.find(c.upper);
        y = upper ? envelope_at(upper->world(), cx, true) : s.ground_y;
      }
    }
  }
  return y;
}

struct Step {
  Scene scene;
  PhysEvent event;
};

std::optional<Step> settle_step(const Scene& s, const std::vector<std::string>& comp,
                                const Config& cfg) {
  std::set<std::string> members(comp.begin(), comp.end());
  const std::string& lead = comp.front();
  Vec2 cm = composite_cm(s, comp);
  auto rotate_about = [&](Vec2 pivot, int dir,
                          const char* note) -> std::optional<Step> {
    auto a = free_rotation(s, lead, members, pivot, dir);
    if (!a || *a < 1e-7) return std::nullopt; // wedged in place
    Scene ns = apply_protate(s, lead, pivot, -dir * *a);
    PhysEvent e;
    e.kind = EventKind::RotateFall;
    e.subject = lead;
    e.assembly = comp;
    e.direction = dir;
    e.from = cm;
    e.to = composite_cm(ns, comp);
    e.note = note;
    return Step{std::move(ns), std::move(e)};
  };

  auto si = support_interval(s, comp, cfg);
  if (si) {
    double margin = 1e-9 * std::max({1.0, std::abs(si->lo), std::abs(si->hi)});
    if (cm.x >= si->lo - margin && cm.x <= si->hi + margin) return std::nullopt;
    int dir = cm.x < si->lo ? -1 : 1;
    double bx = dir < 0 ? si->lo : si->hi;
    return rotate_about({bx, pivot_height(s, comp, members, bx, cfg)}, dir,
                        "centre of mass beyond the support edge");
  }

  double drop = drop_distance(s, members);
  if (drop > 1e-9 && drop < kFar) {
    const RigidBody* leader = s.find(lead);
    Scene ns = apply_ptrans(s, lead, leader->at - Vec2{0, drop});
    PhysEvent e;
    e.kind = EventKind::FallToGround;
    e.subject = lead;
    e.assembly = comp;
    e.from = cm;
    e.to = composite_cm(ns, comp);
    e.note = "unsupported";
    return Step{std::move(ns), std::move(e)};
  }

  // Touching, but nothing level holds it: tip about the nearest contact.
  for (const std::string& id : comp) {
    for (const SupportContact& c : supports_of(s, id, cfg)) {
      if (!c.lower.empty() && members.count(c.lower)) continue;
      double px = c.span.mid();
      if (std::abs(cm.x - px) < 1e-9) continue;
      int dir = cm.x < px ? -1 : 1;
      const RigidBody* upper = s.find(c.upper);
      double py = upper ? envelope_at(upper->world(), px, true) : s.ground_y;
      if (auto st = rotate_about({px, py}, dir, "slanted contact cannot hold"))
        return st;
    }
  }
  return std::nullopt;
}

bool component_fixed(const Scene& s, const std::vector<std::string>& comp) {
  for (const std::string& id : comp) {
    const RigidBody* b = s.find(id);
    if (b && b->fixed) return true;
  }
  return false;
}

} // namespace

Stability stability(const Scene& s, const std::vector<std::string>& assembly,
                    const Config& cfg) {
  Stability out;
  out.cm_x = composite_cm(s, assembly).x;
  out.support = support_interval(s, assembly, cfg);
  if (!out.support) {
    out.kind = Stability::Unsupported;
    return out;
  }
  double lo = out.support->lo, hi = out.support->hi;
  double margin = 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (out.cm_x < lo - margin) {
    out.kind = Stability::RotateFall;
    out.direction = -1;
  } else if (out.cm_x > hi + margin) {
    out.kind = Stability::RotateFall;
    out.direction = 1;
  } else {
    out.kind = Stability::Stable;
    out.marginal = std::abs(out.cm_x - lo) <= margin || std::abs(out.cm_x - hi) <= margin;
  }
  return out;
}

Trace settle(const Scene& s, const Config& cfg) {
  Trace t;
  t.final = s;
  int count = 0;
  for (;;) {
    bool moved = false;
    for (const auto& comp : t.final.components()) {
      if (component_fixed(t.final, comp)) continue;
      auto step = settle_step(t.final, comp, cfg);
      if (!step) continue;
      t.final = std::move(step->scene);
      t.events.push_back(std::move(step->event));
      if (++count > cfg.settle_max_events)
        throw Diverged("settle exceeded " + std::to_string(cfg.settle_max_events) +
                       " events in scene '" + s.name + "'");
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return t;
}

namespace {

PhysEvent no_effect(const std::string& subject, const std::string& note) {
  PhysEvent e;
  e.kind = EventKind::NoEffect;
  e.subject = subject;
  e.assembly = {subject};
  e.note = note;
  return e;
}

} // namespace

Trace crush(const Scene& s, const std::string& tool, const std::string& target,
            Ord force, const Config& cfg) {
  const RigidBody* tb = s.find(tool);
  const RigidBody* gb = s.find(target);
  if (!tb) throw UnknownSymbol("crush: no body '" + tool + "'");
  if (!gb) throw UnknownSymbol("crush: no body '" + target + "'");

  Trace t;
  t.final = s;
  Polygon tw = tb->world(), gw = gb->world();
  bool above = intersect(tw.x_range(), gw.x_range()).has_value() &&
               tw.y_range().lo >= gw.y_range().hi - cfg.contact_eps;
  int punch = static_cast<int>(force) + static_cast<int>(tb->mat.weight);
  int resistance = static_cast<int>(gb->mat.hardness) + 2;
  if (!above) {
    t.events.push_back(no_effect(tool, "tool is not above the target"));
    return t;
  }
  if (!(static_cast<int>(tb->mat.hardness) > static_cast<int>(gb->mat.hardness))) {
    t.events.push_back(no_effect(tool, "tool is not strictly harder"));
    return t;
  }
  if (punch < resistance) {
    t.events.push_back(no_effect(tool, "force and weight below resistance"));
    return t;
  }

  ShapeParams p;
  p.factor = 10; // squash the height to a tenth
  p.axis = "y";
  p.anchor = "bottom";
  Scene squashed = transform_shape(s, target, ShapeOp::Contract, p, cfg);
  PhysEvent e;
  e.kind = EventKind::Crush;
  e.subject = target;
  e.assembly = {target};
  e.from = gw.centroid();
  e.to = squashed.find(target)->world().centroid();
  e.note = "crushed by " + tool;
  Trace after = settle(squashed, cfg);
  t.events.push_back(std::move(e));
  for (auto& ev : after.events) t.events.push_back(std::move(ev));
  t.final = std::move(after.final);
  return t;
}

namespace {

/// Polygon cut down to { p : dot(n, p) <= c }.
Polygon clip_halfplane(const Polygon& p, Vec2 n, double c) {
  Polygon out;
  size_t m = p.pts.size();
  for (size_t i = 0; i < m; i++) {
    Vec2 a = p.pts[i], b = p.pts[(i + 1) % m];
    double da = dot(n, a) - c, db = dot(n, b) - c;
    if (da <= 1e-12) out.pts.push_back(a);
    if ((da < -1e-12 && db > 1e-12) || (da > 1e-12 && db < -1e-12))
      out.pts.push_back(a + (b - a) * (da / (da - db)));
  }
  return out;
}

} // namespace

Trace pierce(const Scene& s, const std::string& tool, const std::string& contact_end,
             const std::string& target, bool rapid, bool forceful, const Config& cfg) {
  const RigidBody* tb = s.find(tool);
  const RigidBody* gb = s.find(target);
  if (!tb) throw UnknownSymbol("pierce: no body '" + tool + "'");
  if (!gb) throw UnknownSymbol("pierce: no body '" + target + "'");
  if (contact_end != "Sharp" && contact_end != "Blunt")
    throw Error("pierce: contact end must be Sharp or Blunt, got '" + contact_end + "'");

  Trace t;
  t.final = s;
  if (contact_end == "Blunt") {
    t.events.push_back(no_effect(tool, "the blunt end does not make much of a dent"));
    return t;
  }

  Polygon tw = tb->world(), gw = gb->world();
  Vec2 sep = gw.centroid() - tw.centroid();
  Vec2 strike = std::abs(sep.x) >= std::abs(sep.y) ? Vec2{sep.x > 0 ? 1.0 : -1.0, 0}
                                                   : Vec2{0, sep.y > 0 ? 1.0 : -1.0};

  PartRegion tip = part_region(s, tool, "Sharp-End", cfg);
  Vec2 tip_at = tip.point ? *tip.point : Vec2{0, 0};
  if (!tip.point && !tip.segs.empty()) {
    Vec2 acc{0, 0};
    for (const Segment& e : tip.segs) acc = acc + (e.a + e.b) * 0.5;
    tip_at = acc * (1.0 / static_cast<double>(tip.segs.size()));
  }
  if (dot(tip_at - tw.centroid(), strike) <= 0)
    throw NotOriented("the sharp end of '" + tool + "' faces away from '" + target +
                      "'");

  if (!rapid || !forceful) {
    t.events.push_back(no_effect(tool, "needs a rapid, forceful strike"));
    return t;
  }
  if (!(static_cast<int>(tb->mat.hardness) > static_cast<int>(gb->mat.hardness))) {
    t.events.push_back(no_effect(tool, "tool is not strictly harder"));
    return t;
  }

  bool horizontal = strike.y == 0;
  double extent = horizontal ? gw.x_range().len() : gw.y_range().len();
  double depth = 0.1 * extent;

  // Footprint: the tool's cross-section within `depth` of its tip.
  double tipc = -kFar;
  for (const Vec2& v : tw.pts) tipc = std::max(tipc, dot(v, strike));
  Polygon cross = clip_halfplane(tw, strike * -1.0, -(tipc - depth));
  double face = horizontal ? (strike.x > 0 ? gw.x_range().lo : gw.x_range().hi)
                           : (strike.y > 0 ? gw.y_range().lo : gw.y_range().hi);

  ShapeParams p;
  p.direction = strike * -1.0; // the face being struck looks back at the tool
  p.amount = depth;
  p.profile = tool;
  Polygon region;
  if (horizontal) {
    Interval ys = cross.y_range();
    double lo = strike.x > 0 ? face : face - depth;
    double hi = strike.x > 0 ? face + depth : face;
    region.pts = {{lo, ys.lo}, {hi, ys.lo}, {hi, ys.hi}, {lo, ys.hi}};
  } else {
    Interval xs = cross.x_range();
    double lo = strike.y > 0 ? face : face - depth;
    double hi = strike.y > 0 ? face + depth : face;
    region.pts = {{xs.lo, lo}, {xs.hi, lo}, {xs.hi, hi}, {xs.lo, hi}};
  }
  p.region = region;

  t.final = transform_shape(s, target, ShapeOp::Indent, p, cfg);
  PhysEvent e;
  e.kind = EventKind::Indent;
  e.subject = target;
  e.assembly = {target};
  e.from = gw.centroid();
  e.to = e.from;
  e.note = "pierced by the sharp end of " + tool;
  t.events.push_back(std::move(e));
  return t;
}

JointReport joint_states(const BodyModel& body, const Scene& s, const Config& cfg) {
  (void)s;
  (void)cfg;
  bool lying = body.resting.count("lying") > 0;
  bool seated = body.resting.count("seat") > 0;
  bool backed = body.resting.count("back") > 0 || body.resting.count("table") > 0;
  bool rested_head = body.resting.count("headrest") > 0;

  JointReport r;
  r.joints["BJ1"] = lying || rested_head ? JointState::Relaxed : JointState::Tensed;
  r.joints["BJ2"] = lying || backed ? JointState::Relaxed : JointState::Tensed;
  r.joints["BJ3"] = lying || seated ? JointState::Relaxed : JointState::Tensed;
  r.joints["BJ4"] = lying || seated ? JointState::Relaxed : JointState::Tensed;
  for (auto& [_, st] : r.joints) r.tensed += st == JointState::Tensed ? 1 : 0;
  r.comfort = r.tensed <= 1   ? Comfort::Comfortable
              : r.tensed == 2 ? Comfort::ReasonablyComfortable
                              : Comfort::NotComfortable;
  return r;
}

bool reachable(const BodyModel& seated, const std::string& target_posture,
               const Scene& s, const Config& cfg) {
  const BodyPosture* target = find_posture(target_posture);
  if (!target) throw UnknownSymbol("unknown posture '" + target_posture + "'");

  std::vector<const RigidBody*> obstacles;
  std::string prefix = seated.name + ".";
  for (const RigidBody& b : s.bodies) {
    if (b.id.rfind(prefix, 0) == 0) continue;
    if (b.has_tag("Seat") || b.has_tag("Legs")) continue; // side-view depth
    obstacles.push_back(&b);
  }

  int n = std::max(cfg.sweep_samples, 2);
  for (int i = 0; i <= n; i++) {
    double u = static_cast<double>(i) / n;
    BodyModel probe = seated;
    probe.lean = seated.lean + u * (target->lean - seated.lean);
    probe.neck_a = seated.neck_a + u * (target->neck - seated.neck_a);
    probe.hip_a = seated.hip_a + u * (target->hip - seated.hip_a);
    probe.knee_a = seated.knee_a + u * (target->knee - seated.knee_a);
    probe.ankle_a = seated.ankle_a + u * (target->ankle - seated.ankle_a);
    for (const RigidBody& part : body_polygons(probe)) {
      if (part.id != prefix + "B4" && part.id != prefix + "B5") continue;
      Polygon w = part.world();
      if (w.y_range().lo < s.ground_y - 1e-9) return false;
      for (const RigidBody* o : obstacles)
        if (overlap_depth(w, o->world()) > 1e-6) return false;
    }
  }
  return true;
}

ChairStability person_chair_stability(const Scene& s,
                                      const std::vector<std::string>& chair,
                                      const BodyModel& body, const std::string& posture,
                                      const Config& cfg) {
  BodyModel seated = set_posture(body, posture, s, cfg);
  Scene merged = with_body(s, seated);
  std::vector<std::string> assembly = chair;
  for (const std::string& id : body_part_ids(seated)) assembly.push_back(id);
  auto v = stability(merged, assembly, cfg);
  return v.kind == Stability::Stable ? ChairStability::Stable : ChairStability::Topple;
}

namespace {

std::string place_label(Vec2 v) {
  std::ostringstream os;
  os << "at(" << v.x << " " << v.y << ")";
  return os.str();
}

} // namespace

ConceptGraph trace_graph(const Trace& t) {
  ConceptGraph g;
  g.name = t.final.name.empty() ? "trace" : t.final.name + "-trace";
  NodeId prev = -1;
  for (const PhysEvent& e : t.events) {
    NodeId pp = g.add_node(NodeKind::PP, e.subject);
    NodeId sc = g.add_node(NodeKind::StateChange, event_kind_name(e.kind));
    g.add_link(pp, sc, LinkKind::Conceptualization);
    NodeId from = g.add_node(NodeKind::PA, place_label(e.from));
    NodeId to = g.add_node(NodeKind::PA, place_label(e.to));
    g.add_link(sc, from, LinkKind::DirectionFrom);
    g.add_link(sc, to, LinkKind::DirectionTo);
    if (prev >= 0) g.add_link(prev, sc, LinkKind::Temporal);
    prev = sc;
  }
  return g;
}

} // namespace cdp
