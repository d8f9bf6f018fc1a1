#pragma once

#include <optional>
#include <string>

#include "cdplus/config.hpp"
#include "cdplus/scene.hpp"

namespace cdp {

/// Shape changes applied to scene bodies (physical) or to conceptual
/// regions carved out of a body's material (mental; the scene itself is
/// never touched by those).

enum class ShapeOp { Expand, Contract, Extend, Extrude, Indent };
enum class MentalOp { MExpand, MContract, MExtend, MExtrude, MIndent };

ShapeOp shape_op_from_string(const std::string& s);
std::string shape_op_name(ShapeOp op);
std::string mental_op_name(MentalOp op);

struct ShapeParams {
  // Expand / Contract
  double factor = 1;          // scale applied about the anchor
  std::string axis = "both";  // "x" | "y" | "both"
  std::string anchor = "cm";  // "cm" | "bottom" (keeps the base planted)
  // Extend / Extrude / Indent
  Vec2 direction{0, 1};          // face selector; must be axis-aligned
  double amount = 0;             // face offset or bump/dent depth
  std::optional<Interval> span;  // sub-face extent along the face
  std::string profile;           // Indent: id of the shape that cut it
  std::optional<Polygon> region; // Indent: explicit dent outline
};

/// Applies a physical shape change to `obj` and returns the new scene.
/// Expand/Contract scale the outline about the anchor; Extend offsets
/// the face the direction points at; Extrude adds the bump as a new
/// continuum-attached body (keeping every outline convex); Indent
/// records a tagged concavity on the body instead of denting the
/// outline. Throws UnknownSymbol for a missing body and
/// DegenerateResult when the result would have no area.
Scene transform_shape(const Scene& s, const std::string& obj, ShapeOp op,
                      const ShapeParams& p, const Config& cfg = Config::defaults());

/// A conceptual sub-part of a body: an area within its material. The
/// host's material extends over every body reachable through continuum
/// attachments (one piece cut into several convex outlines).
struct ConceptRegion {
  std::string host;  // body the region was seeded in
  std::string label; // display name
  Polygon area;      // world coordinates
};

/// The region covering a whole body.
ConceptRegion region_of_body(const Scene& s, const std::string& id,
                             const std::string& label = "");

/// Applies a mental shape change to the region; the grown region must
/// stay inside the host's material (OutOfMaterial otherwise); shrinking
/// below zero area is DegenerateResult. The scene is read-only.
ConceptRegion mental_transform(const Scene& s, const ConceptRegion& r, MentalOp op,
                               const ShapeParams& p,
                               const Config& cfg = Config::defaults());

} // namespace cdp
