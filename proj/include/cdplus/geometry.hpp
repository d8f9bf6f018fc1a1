#pragma once

#include <optional>
#include <vector>

namespace cdp {

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);
Vec2 normalized(Vec2 a);
Vec2 rotated(Vec2 v, double deg);
Vec2 perp(Vec2 v); // +90 degrees

struct Interval {
  double lo = 0, hi = 0;
  bool valid() const { return lo <= hi; }
  double mid() const { return (lo + hi) / 2; }
  double len() const { return hi - lo; }
};

std::optional<Interval> intersect(Interval a, Interval b);
Interval hull(Interval a, Interval b);

struct Segment {
  Vec2 a, b;
};

double segment_point_distance(const Segment& s, Vec2 p);
double segment_segment_distance(const Segment& s, const Segment& t);
bool segments_intersect(const Segment& s, const Segment& t);

/// Convex polygon; vertices must wind counter-clockwise.
struct Polygon {
  std::vector<Vec2> pts;

  double area() const;
  Vec2 centroid() const;
  Interval x_range() const;
  Interval y_range() const;
  double diagonal() const; // AABB diagonal
  bool contains(Vec2 p, double eps = 1e-12) const;
  bool is_convex_ccw() const;
  std::vector<Segment> edges() const;
  /// Outward normal of edge i (pts[i] -> pts[i+1]).
  Vec2 edge_normal(size_t i) const;
};

Polygon make_box(double w, double h);             // axis-aligned, min corner at origin
Polygon transformed(const Polygon& p, Vec2 at, double angle_deg);

double polygon_distance(const Polygon& a, const Polygon& b); // 0 when overlapping
bool polygons_overlap(const Polygon& a, const Polygon& b, double eps = 1e-12);
double overlap_depth(const Polygon& a, const Polygon& b); // SAT penetration, 0 if apart

} // namespace cdp
