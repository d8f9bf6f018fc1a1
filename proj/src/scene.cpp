#include "cdplus/scene.hpp"

#include <algorithm>
#include <cmath>

#include "cdplus/errors.hpp"

namespace cdp {

Ord ord_from_string(const std::string& s) {
  if (s == "low") return Ord::Low;
  if (s == "mid") return Ord::Mid;
  if (s == "high") return Ord::High;
  throw UnknownSymbol("unknown ordinal '" + s + "' (want low|mid|high)");
}

std::string ord_to_string(Ord o) {
  switch (o) {
    case Ord::Low: return "low";
    case Ord::Mid: return "mid";
    case Ord::High: return "high";
  }
  return "?";
}

const RigidBody* Scene::find(const std::string& id) const {
  for (auto& b : bodies)
    if (b.id == id) return &b;
  return nullptr;
}

RigidBody* Scene::find(const std::string& id) {
  for (auto& b : bodies)
    if (b.id == id) return &b;
  return nullptr;
}

const Marker* Scene::find_marker(const std::string& id) const {
  for (auto& m : markers)
    if (m.id == id) return &m;
  return nullptr;
}

bool Scene::erase(const std::string& id) {
  auto it = std::find_if(bodies.begin(), bodies.end(),
                         [&](const RigidBody& b) { return b.id == id; });
  if (it == bodies.end()) return false;
  bodies.erase(it);
  attachments.erase(std::remove_if(attachments.begin(), attachments.end(),
                                   [&](const Attachment& a) {
                                     return a.a == id || a.b == id;
                                   }),
                    attachments.end());
  return true;
}

std::vector<std::string> Scene::component_of(const std::string& id) const {
  std::set<std::string> seen{id};
  std::vector<std::string> frontier{id};
  while (!frontier.empty()) {
    std::string cur = frontier.back();
    frontier.pop_back();
    for (auto& a : attachments) {
      std::string other;
      if (a.a == cur) other = a.b;
      else if (a.b == cur) other = a.a;
      else continue;
      if (seen.insert(other).second) frontier.push_back(other);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<std::string>> Scene::components() const {
  std::vector<std::vector<std::string>> out;
  std::set<std::string> done;
  for (auto& b : bodies) {
    if (done.count(b.id)) continue;
    auto comp = component_of(b.id);
    for (auto& m : comp) done.insert(m);
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

bool face_level(Vec2 normal, const Config& cfg) {
  double lim = std::cos(cfg.angle_tol_deg * M_PI / 180.0);
  return normal.y >= lim;
}

// x-span of the parts of two near-parallel edges that are within eps
std::optional<Interval> touching_span(const Segment& under, const Segment& top, double eps) {
  Interval ux{std::min(under.a.x, under.b.x), std::max(under.a.x, under.b.x)};
  Interval tx{std::min(top.a.x, top.b.x), std::max(top.a.x, top.b.x)};
  auto ov = intersect(ux, tx);
  if (!ov) {
    // vertical-ish faces: fall back to proximity of whole segments
    if (segment_segment_distance(under, top) <= eps)
      return Interval{std::max(ux.lo, tx.lo), std::max(ux.lo, tx.lo)};
    return std::nullopt;
  }
  auto y_at = [](const Segment& s, double x) {
    double dx = s.b.x - s.a.x;
    if (std::abs(dx) < 1e-12) return std::min(s.a.y, s.b.y);
    double t = (x - s.a.x) / dx;
    return s.a.y + (s.b.y - s.a.y) * t;
  };
  // sample the overlap: touching where vertical gap <= eps
  double lo = 1e300, hi = -1e300;
  int n = 8;
  for (int i = 0; i <= n; i++) {
    double x = ov->lo + (ov->hi - ov->lo) * i / n;
    double gap = y_at(under, x) - y_at(top, x);
    if (std::abs(gap) <= eps) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

} // namespace

std::vector<SupportContact> supports_of(const Scene& s, const std::string& body,
                                        const Config& cfg) {
  std::vector<SupportContact> out;
  const RigidBody* b = s.find(body);
  if (!b) return out;
  Polygon wb = b->world();
  auto edges = wb.edges();
  // underside faces: outward normal points down-ish
  for (size_t i = 0; i < edges.size(); i++) {
    Vec2 n = wb.edge_normal(i);
    if (n.y > -0.1) continue;
    const Segment& under = edges[i];
    // ground contact
    double ymin = std::min(under.a.y, under.b.y);
    double ymax = std::max(under.a.y, under.b.y);
    if (ymin - s.ground_y <= cfg.contact_eps) {
      Interval span{std::min(under.a.x, under.b.x), std::max(under.a.x, under.b.x)};
      if (ymax - s.ground_y > cfg.contact_eps) {
        // slanted face touching ground at one end: contact at the low point
        double x = under.a.y < under.b.y ? under.a.x : under.b.x;
        span = {x, x};
      }
      out.push_back({body, "", span, true});
    }
    // other bodies' top faces
    for (auto& other : s.bodies) {
      if (other.id == body) continue;
      Polygon wo = other.world();
      auto oedges = wo.edges();
      for (size_t j = 0; j < oedges.size(); j++) {
        Vec2 on = wo.edge_normal(j);
        if (on.y < 0.1) continue; // want upward-ish faces
        auto span = touching_span(under, oedges[j], cfg.contact_eps);
        if (!span) continue;
        out.push_back({body, other.id, *span, face_level(on, cfg)});
      }
    }
  }
  // merge duplicate contacts per supporter
  std::sort(out.begin(), out.end(), [](const SupportContact& a, const SupportContact& b) {
    return a.lower < b.lower;
  });
  std::vector<SupportContact> merged;
  for (auto& c : out) {
    if (!merged.empty() && merged.back().lower == c.lower &&
        merged.back().level == c.level) {
      merged.back().span = hull(merged.back().span, c.span);
    } else {
      merged.push_back(c);
    }
  }
  return merged;
}

std::vector<SupportContact> all_supports(const Scene& s, const Config& cfg) {
  std::vector<SupportContact> out;
  for (auto& b : s.bodies) {
    auto cs = supports_of(s, b.id, cfg);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

Vec2 composite_cm(const Scene& s, const std::vector<std::string>& assembly) {
  double total = 0;
  Vec2 acc{0, 0};
  for (auto& id : assembly) {
    const RigidBody* b = s.find(id);
    if (!b) throw UnknownSymbol("composite_cm: no body '" + id + "'");
    Polygon w = b->world();
    double m = w.area() * static_cast<double>(b->mat.weight);
    acc = acc + w.centroid() * m;
    total += m;
  }
  if (total <= 0) throw Error("composite_cm: empty assembly");
  return acc * (1.0 / total);
}

std::optional<Interval> support_interval(const Scene& s,
                                         const std::vector<std::string>& assembly,
                                         const Config& cfg) {
  std::set<std::string> members(assembly.begin(), assembly.end());
  std::optional<Interval> acc;
  for (auto& id : assembly) {
    for (auto& c : supports_of(s, id, cfg)) {
      if (!c.lower.empty() && members.count(c.lower)) continue; // internal contact
      if (!c.level) continue;                                   // slanted: no support
      acc = acc ? hull(*acc, c.span) : c.span;
    }
  }
  return acc;
}

std::vector<std::string> check_scene(const Scene& s, const Config& cfg) {
  std::vector<std::string> problems;
  for (auto& b : s.bodies) {
    if (!b.shape.is_convex_ccw())
      problems.push_back("body " + b.id + ": outline must be convex and counter-clockwise");
    if (b.world().y_range().lo < s.ground_y - cfg.contact_eps)
      problems.push_back("body " + b.id + ": extends below ground");
  }
  for (size_t i = 0; i < s.bodies.size(); i++)
    for (size_t j = i + 1; j < s.bodies.size(); j++) {
      double d = overlap_depth(s.bodies[i].world(), s.bodies[j].world());
      if (d > 1e-6)
        problems.push_back("bodies " + s.bodies[i].id + " and " + s.bodies[j].id +
                           " interpenetrate");
    }
  for (auto& a : s.attachments)
    if (!s.find(a.a) || !s.find(a.b))
      problems.push_back("attachment references a missing body");
  return problems;
}

Scene apply_ptrans(const Scene& s, const std::string& body, Vec2 to) {
  const RigidBody* b = s.find(body);
  if (!b) throw UnknownSymbol("apply_ptrans: no body '" + body + "'");
  if (b->fixed) throw ObjectFixed("body '" + body + "' is a fixture");
  Vec2 delta = to - b->at;
  Scene out = s;
  for (auto& id : s.component_of(body)) {
    RigidBody* m = out.find(id);
    if (m->fixed) throw ObjectFixed("attached body '" + id + "' is a fixture");
    m->at = m->at + delta;
  }
  return out;
}

Scene apply_protate(const Scene& s, const std::string& body, Vec2 pivot, double angle_deg) {
  const RigidBody* b = s.find(body);
  if (!b) throw UnknownSymbol("apply_protate: no body '" + body + "'");
  if (b->fixed) throw ObjectFixed("body '" + body + "' is a fixture");
  Scene out = s;
  for (auto& id : s.component_of(body)) {
    RigidBody* m = out.find(id);
    if (m->fixed) throw ObjectFixed("attached body '" + id + "' is a fixture");
    m->at = pivot + rotated(m->at - pivot, angle_deg);
    m->angle += angle_deg;
  }
  return out;
}

Scene scaled(const Scene& s, double k) {
  Scene out = s;
  out.ground_y *= k;
  for (auto& b : out.bodies) {
    for (auto& p : b.shape.pts) p = p * k;
    b.at = b.at * k;
    for (auto& d : b.dents)
      for (auto& p : d.region.pts) p = p * k;
  }
  for (auto& m : out.markers) m.at = m.at * k;
  return out;
}

} // namespace cdp
