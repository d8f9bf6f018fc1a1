#include "cdplus/shape_ops.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "cdplus/errors.hpp"

namespace cdp {

namespace {

std::string upper(std::string s) {
  for (char& c : s) c = (char)std::toupper((unsigned char)c);
  return s;
}

} // namespace

ShapeOp shape_op_from_string(const std::string& s) {
  std::string u = upper(s);
  if (u == "EXPAND") return ShapeOp::Expand;
  if (u == "CONTRACT") return ShapeOp::Contract;
  if (u == "EXTEND") return ShapeOp::Extend;
  if (u == "EXTRUDE") return ShapeOp::Extrude;
  if (u == "INDENT") return ShapeOp::Indent;
  throw UnknownSymbol("unknown shape change '" + s + "'");
}

std::string shape_op_name(ShapeOp op) {
  switch (op) {
    case ShapeOp::Expand: return "EXPAND";
    case ShapeOp::Contract: return "CONTRACT";
    case ShapeOp::Extend: return "EXTEND";
    case ShapeOp::Extrude: return "EXTRUDE";
    case ShapeOp::Indent: return "INDENT";
  }
  return "?";
}

std::string mental_op_name(MentalOp op) {
  switch (op) {
    case MentalOp::MExpand: return "MEXPAND";
    case MentalOp::MContract: return "MCONTRACT";
    case MentalOp::MExtend: return "MEXTEND";
    case MentalOp::MExtrude: return "MEXTRUDE";
    case MentalOp::MIndent: return "MINDENT";
  }
  return "?";
}

namespace {

constexpr double kAreaEps = 1e-12;

bool axis_aligned(Vec2 d, int* axis, int* sign) {
  if (std::abs(d.x) > 1e-9 && std::abs(d.y) <= 1e-9) {
    *axis = 0;
    *sign = d.x > 0 ? 1 : -1;
    return true;
  }
  if (std::abs(d.y) > 1e-9 && std::abs(d.x) <= 1e-9) {
    *axis = 1;
    *sign = d.y > 0 ? 1 : -1;
    return true;
  }
  return false;
}

double coord(Vec2 v, int axis) { return axis == 0 ? v.x : v.y; }

bool is_rotated(const RigidBody& b) {
  double a = std::fmod(b.angle, 360.0);
  return std::abs(a) > 1e-9;
}

/// Scales polygon points about an anchor, per-axis.
Polygon scale_about(const Polygon& p, Vec2 anchor, double kx, double ky) {
  Polygon out = p;
  for (Vec2& v : out.pts)
    v = {anchor.x + (v.x - anchor.x) * kx, anchor.y + (v.y - anchor.y) * ky};
  return out;
}

/// Offsets the vertices lying on the extreme face along `axis * sign`.
Polygon offset_face(const Polygon& p, int axis, int sign, double amount) {
  double ext = sign > 0 ? coord(p.pts[0], axis) : coord(p.pts[0], axis);
  for (const Vec2& v : p.pts)
    ext = sign > 0 ? std::max(ext, coord(v, axis)) : std::min(ext, coord(v, axis));
  double tol = 1e-9 * std::max(1.0, std::abs(ext));
  Polygon out = p;
  for (Vec2& v : out.pts) {
    if (std::abs(coord(v, axis) - ext) > tol) continue;
    if (axis == 0)
      v.x += sign * amount;
    else
      v.y += sign * amount;
  }
  return out;
}

/// Extent of the extreme face perpendicular to `axis`: hull of the
/// coordinates of the vertices sitting on that face.
Interval face_span(const Polygon& p, int axis, int sign) {
  double ext = coord(p.pts[0], axis);
  for (const Vec2& v : p.pts)
    ext = sign > 0 ? std::max(ext, coord(v, axis)) : std::min(ext, coord(v, axis));
  double tol = 1e-9 * std::max(1.0, std::abs(ext));
  Interval span{0, 0};
  bool first = true;
  for (const Vec2& v : p.pts) {
    if (std::abs(coord(v, axis) - ext) > tol) continue;
    double c = coord(v, 1 - axis);
    if (first) {
      span = {c, c};
      first = false;
    } else {
      span = hull(span, {c, c});
    }
  }
  return span;
}

/// Axis-aligned rectangle as a CCW polygon.
Polygon rect(double x0, double x1, double y0, double y1) {
  Polygon p;
  p.pts = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  return p;
}

int require_axis(Vec2 dir, int* sign) {
  int axis = 0;
  if (!axis_aligned(dir, &axis, sign))
    throw Error("face direction must be axis-aligned");
  return axis;
}

} // namespace

Scene transform_shape(const Scene& s, const std::string& obj, ShapeOp op,
                      const ShapeParams& p, const Config& cfg) {
  (void)cfg;
  Scene out = s;
  RigidBody* b = out.find(obj);
  if (!b) throw UnknownSymbol("no body named '" + obj + "' in scene '" + s.name + "'");

  switch (op) {
    case ShapeOp::Expand:
    case ShapeOp::Contract: {
      if (p.factor <= 0)
        throw DegenerateResult("scale factor must be positive, got " +
                               std::to_string(p.factor));
      double k = op == ShapeOp::Contract ? 1.0 / p.factor : p.factor;
      if (p.axis != "x" && p.axis != "y" && p.axis != "both")
        throw Error("axis must be x, y or both, got '" + p.axis + "'");
      if (p.anchor != "cm" && p.anchor != "bottom")
        throw Error("anchor must be cm or bottom, got '" + p.anchor + "'");
      double kx = p.axis != "y" ? k : 1;
      double ky = p.axis != "x" ? k : 1;
      if (is_rotated(*b) && (p.axis != "both" || p.anchor != "cm"))
        throw Error("a rotated body only supports uniform scaling about its center");
      Vec2 cm = b->shape.centroid();
      Vec2 anchor = p.anchor == "bottom" ? Vec2{cm.x, b->shape.y_range().lo} : cm;
      b->shape = scale_about(b->shape, anchor, kx, ky);
      if (b->shape.area() <= kAreaEps)
        throw DegenerateResult("scaling left '" + obj + "' without area");
      break;
    }
    case ShapeOp::Extend: {
      int sign = 0;
      int axis = require_axis(p.direction, &sign);
      if (is_rotated(*b)) throw Error("face changes need an axis-aligned body");
      b->shape = offset_face(b->shape, axis, sign, p.amount);
      if (b->shape.area() <= kAreaEps || !b->shape.is_convex_ccw())
        throw DegenerateResult("face offset folded '" + obj + "' through itself");
      break;
    }
    case ShapeOp::Extrude: {
      int sign = 0;
      int axis = require_axis(p.direction, &sign);
      if (is_rotated(*b)) throw Error("face changes need an axis-aligned body");
      if (p.amount <= 0) throw DegenerateResult("bump depth must be positive");
      Polygon w = b->world();
      double face = sign > 0 ? (axis == 0 ? w.x_range().hi : w.y_range().hi)
                             : (axis == 0 ? w.x_range().lo : w.y_range().lo);
      Interval span = p.span ? *p.span : face_span(w, axis, sign);
      if (span.len() <= kAreaEps)
        throw DegenerateResult("the selected face has no extent to build on");
      double lo = sign > 0 ? face : face - p.amount;
      double hi = sign > 0 ? face + p.amount : face;
      Polygon bump = axis == 0 ? rect(lo, hi, span.lo, span.hi)
                               : rect(span.lo, span.hi, lo, hi);
      int n = 1;
      for (auto& other : out.bodies)
        if (other.id.rfind(obj + ".x", 0) == 0) n++;
      RigidBody nb;
      nb.id = obj + ".x" + std::to_string(n);
      nb.at = {bump.x_range().lo, bump.y_range().lo};
      nb.shape = make_box(bump.x_range().len(), bump.y_range().len());
      nb.mat = b->mat;
      nb.fixed = b->fixed;
      out.bodies.push_back(nb);
      out.attachments.push_back({obj, nb.id, true});
      break;
    }
    case ShapeOp::Indent: {
      int sign = 0;
      int axis = require_axis(p.direction, &sign);
      if (p.amount <= 0) throw DegenerateResult("dent depth must be positive");
      Polygon w = b->world();
      double extent = axis == 0 ? w.x_range().len() : w.y_range().len();
      if (p.amount >= extent - 1e-9)
        throw DegenerateResult("a dent of depth " + std::to_string(p.amount) +
                               " would pass through '" + obj + "'");
      Polygon region;
      if (p.region) {
        region = *p.region;
      } else {
        double face = sign > 0 ? (axis == 0 ? w.x_range().hi : w.y_range().hi)
                               : (axis == 0 ? w.x_range().lo : w.y_range().lo);
        Interval span = p.span ? *p.span : face_span(w, axis, sign);
        double lo = sign > 0 ? face - p.amount : face;
        double hi = sign > 0 ? face : face + p.amount;
        region = axis == 0 ? rect(lo, hi, span.lo, span.hi)
                           : rect(span.lo, span.hi, lo, hi);
      }
      b->dents.push_back({region, p.profile});
      break;
    }
  }
  return out;
}

ConceptRegion region_of_body(const Scene& s, const std::string& id,
                             const std::string& label) {
  const RigidBody* b = s.find(id);
  if (!b) throw UnknownSymbol("no body named '" + id + "' in scene '" + s.name + "'");
  return {id, label.empty() ? id : label, b->world()};
}

namespace {

/// Bodies sharing one piece of material with `host` (continuum
/// attachments only; a plain joint is a different piece).
std::vector<const RigidBody*> material_of(const Scene& s, const std::string& host) {
  if (!s.find(host))
    throw UnknownSymbol("no body named '" + host + "' in scene '" + s.name + "'");
  std::set<std::string> seen{host};
  std::vector<std::string> frontier{host};
  while (!frontier.empty()) {
    std::string cur = frontier.back();
    frontier.pop_back();
    for (const Attachment& a : s.attachments) {
      if (!a.continuum) continue;
      std::string next;
      if (a.a == cur) next = a.b;
      if (a.b == cur) next = a.a;
      if (next.empty() || seen.count(next)) continue;
      seen.insert(next);
      frontier.push_back(next);
    }
  }
  std::vector<const RigidBody*> out;
  for (const std::string& id : seen)
    if (const RigidBody* b = s.find(id)) out.push_back(b);
  return out;
}

bool within_material(const std::vector<const RigidBody*>& material, const Polygon& area) {
  std::vector<Vec2> samples = area.pts;
  for (const Segment& e : area.edges()) {
    Vec2 d = e.b - e.a;
    samples.push_back(e.a + d * 0.25);
    samples.push_back(e.a + d * 0.5);
    samples.push_back(e.a + d * 0.75);
  }
  samples.push_back(area.centroid());
  for (Vec2 q : samples) {
    bool inside = false;
    for (const RigidBody* b : material)
      if (b->world().contains(q, 1e-6)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

} // namespace

ConceptRegion mental_transform(const Scene& s, const ConceptRegion& r, MentalOp op,
                               const ShapeParams& p, const Config& cfg) {
  (void)cfg;
  ConceptRegion out = r;
  switch (op) {
    case MentalOp::MExpand:
    case MentalOp::MContract: {
      if (p.factor <= 0)
        throw DegenerateResult("scale factor must be positive, got " +
                               std::to_string(p.factor));
      double k = op == MentalOp::MContract ? 1.0 / p.factor : p.factor;
      double kx = p.axis != "y" ? k : 1;
      double ky = p.axis != "x" ? k : 1;
      out.area = scale_about(out.area, out.area.centroid(), kx, ky);
      break;
    }
    case MentalOp::MExtend:
    case MentalOp::MExtrude: {
      int sign = 0;
      int axis = require_axis(p.direction, &sign);
      out.area = offset_face(out.area, axis, sign, p.amount);
      break;
    }
    case MentalOp::MIndent: {
      int sign = 0;
      int axis = require_axis(p.direction, &sign);
      out.area = offset_face(out.area, axis, sign, -p.amount);
      break;
    }
  }
  if (out.area.area() <= kAreaEps || !out.area.is_convex_ccw())
    throw DegenerateResult("the region '" + r.label + "' shrank away");
  if (!within_material(material_of(s, r.host), out.area))
    throw OutOfMaterial("the region '" + r.label + "' left the material of '" +
                        r.host + "'");
  return out;
}

} // namespace cdp
