#include "cdplus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdp {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0 ? a * (1.0 / n) : a;
}

Vec2 rotated(Vec2 v, double deg) {
  double r = deg * M_PI / 180.0;
  double c = std::cos(r), s = std::sin(r);
  return {v.x * c - v.y * s, v.x * s + v.y * c};
}

Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

std::optional<Interval> intersect(Interval a, Interval b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (!r.valid()) return std::nullopt;
  return r;
}

Interval hull(Interval a, Interval b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

double segment_point_distance(const Segment& s, Vec2 p) {
  Vec2 d = s.b - s.a;
  double l2 = dot(d, d);
  double t = l2 > 0 ? std::clamp(dot(p - s.a, d) / l2, 0.0, 1.0) : 0.0;
  return norm(p - (s.a + d * t));
}

bool segments_intersect(const Segment& s, const Segment& t) {
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    double v = cross(b - a, c - a);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
  };
  int o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  int o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  auto on = [&](Vec2 a, Vec2 b, Vec2 c) {
    return orient(a, b, c) == 0 && std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
  };
  return on(s.a, s.b, t.a) || on(s.a, s.b, t.b) || on(t.a, t.b, s.a) || on(t.a, t.b, s.b);
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) return 0.0;
  return std::min({segment_point_distance(s, t.a), segment_point_distance(s, t.b),
                   segment_point_distance(t, s.a), segment_point_distance(t, s.b)});
}

double Polygon::area() const {
  double a = 0;
  size_t n = pts.size();
  for (size_t i = 0; i < n; i++) a += cross(pts[i], pts[(i + 1) % n]);
  return a / 2;
}

Vec2 Polygon::centroid() const {
  // shoelace-weighted vertex average
  double a = 0;
  Vec2 c{0, 0};
  size_t n = pts.size();
  for (size_t i = 0; i < n; i++) {
    double w = cross(pts[i], pts[(i + 1) % n]);
    a += w;
    c = c + (pts[i] + pts[(i + 1) % n]) * w;
  }
  a /= 2;
  return c * (1.0 / (6 * a));
}

Interval Polygon::x_range() const {
  Interval r{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (auto& p : pts) {
    r.lo = std::min(r.lo, p.x);
    r.hi = std::max(r.hi, p.x);
  }
  return r;
}

Interval Polygon::y_range() const {
  Interval r{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (auto& p : pts) {
    r.lo = std::min(r.lo, p.y);
    r.hi = std::max(r.hi, p.y);
  }
  return r;
}

double Polygon::diagonal() const {
  auto xr = x_range(), yr = y_range();
  return std::hypot(xr.len(), yr.len());
}

bool Polygon::contains(Vec2 p, double eps) const {
  size_t n = pts.size();
  for (size_t i = 0; i < n; i++)
    if (cross(pts[(i + 1) % n] - pts[i], p - pts[i]) < -eps) return false;
  return true;
}

bool Polygon::is_convex_ccw() const {
  size_t n = pts.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; i++) {
    Vec2 a = pts[i], b = pts[(i + 1) % n], c = pts[(i + 2) % n];
    if (cross(b - a, c - b) < -1e-12) return false;
  }
  return area() > 0;
}

std::vector<Segment> Polygon::edges() const {
  std::vector<Segment> out;
  size_t n = pts.size();
  for (size_t i = 0; i < n; i++) out.push_back({pts[i], pts[(i + 1) % n]});
  return out;
}

Vec2 Polygon::edge_normal(size_t i) const {
  size_t n = pts.size();
  Vec2 d = pts[(i + 1) % n] - pts[i];
  return normalized(Vec2{d.y, -d.x}); // outward for CCW winding
}

Polygon make_box(double w, double h) {
  return Polygon{{{0, 0}, {w, 0}, {w, h}, {0, h}}};
}

Polygon transformed(const Polygon& p, Vec2 at, double angle_deg) {
  Polygon out;
  out.pts.reserve(p.pts.size());
  for (auto& v : p.pts) out.pts.push_back(at + rotated(v, angle_deg));
  return out;
}

double polygon_distance(const Polygon& a, const Polygon& b) {
  if (polygons_overlap(a, b)) return 0.0;
  double best = std::numeric_limits<double>::max();
  for (auto& ea : a.edges())
    for (auto& eb : b.edges()) best = std::min(best, segment_segment_distance(ea, eb));
  return best;
}

// separating-axis test over both polygons' edge normals
static void project(const Polygon& p, Vec2 axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::max();
  hi = std::numeric_limits<double>::lowest();
  for (auto& v : p.pts) {
    double d = dot(v, axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

double overlap_depth(const Polygon& a, const Polygon& b) {
  double depth = std::numeric_limits<double>::max();
  auto axes = [&](const Polygon& p) {
    for (size_t i = 0; i < p.pts.size(); i++) {
      Vec2 axis = p.edge_normal(i);
      double alo, ahi, blo, bhi;
      project(a, axis, alo, ahi);
      project(b, axis, blo, bhi);
      double o = std::min(ahi, bhi) - std::max(alo, blo);
      depth = std::min(depth, o);
    }
  };
  axes(a);
  axes(b);
  return std::max(0.0, depth);
}

bool polygons_overlap(const Polygon& a, const Polygon& b, double eps) {
  return overlap_depth(a, b) > eps;
}

} // namespace cdp
