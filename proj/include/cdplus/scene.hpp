#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdplus/config.hpp"
#include "cdplus/geometry.hpp"

namespace cdp {

/// Three-step ordinal scale used for material properties and forces.
enum class Ord : int { Low = 1, Mid = 2, High = 3 };

Ord ord_from_string(const std::string& s);
std::string ord_to_string(Ord o);

struct Material {
  Ord hardness = Ord::Mid;
  Ord weight = Ord::Mid;
};

/// A dent or hole left in a body by an indentation; kept as a tagged region
/// so body outlines stay convex.
struct Concavity {
  Polygon region;       // world coordinates at creation time (local to pose)
  std::string profile;  // id of the body whose tip shaped it
};

struct RigidBody {
  std::string id;
  Polygon shape;       // local frame, convex CCW
  Vec2 at{0, 0};
  double angle = 0;    // degrees
  Material mat;
  std::optional<Vec2> heading; // local "front" direction
  bool fixed = false;
  std::set<std::string> tags;
  std::vector<Concavity> dents;

  Polygon world() const { return transformed(shape, at, angle); }
  bool has_tag(const std::string& t) const { return tags.count(t) > 0; }
};

struct Marker {
  std::string id;
  Vec2 at;
};

struct Attachment {
  std::string a, b;
  bool continuum = false; // same piece of material (for region growth)
};

struct Scene {
  std::string name;
  double ground_y = 0;
  std::vector<RigidBody> bodies;
  std::vector<Attachment> attachments;
  std::vector<Marker> markers;

  const RigidBody* find(const std::string& id) const;
  RigidBody* find(const std::string& id);
  const Marker* find_marker(const std::string& id) const;
  bool erase(const std::string& id); // removes body and its attachments

  /// Bodies transitively attached to `id`, including itself, sorted.
  std::vector<std::string> component_of(const std::string& id) const;
  /// All attachment components, each sorted, ordered by first member.
  std::vector<std::vector<std::string>> components() const;
};

/// A resting contact: `upper`'s underside touches `lower`'s top face (or the
/// ground when lower is empty). Slanted faces still register but are flagged
/// as unable to transmit support.
struct SupportContact {
  std::string upper, lower; // lower == "" means ground
  Interval span;            // x-extent of the touching region
  bool level = true;        // supporting face is level within tolerance
};

/// Contacts through which `body` rests on something beneath it.
std::vector<SupportContact> supports_of(const Scene& s, const std::string& body,
                                        const Config& cfg = Config::defaults());

/// All resting contacts in the scene (every body).
std::vector<SupportContact> all_supports(const Scene& s, const Config& cfg = Config::defaults());

/// Area x weight-ordinal weighted centroid of a set of bodies.
Vec2 composite_cm(const Scene& s, const std::vector<std::string>& assembly);

/// Hull of the x-spans of level contacts from assembly members onto
/// non-members (or ground). Empty optional when nothing level supports it.
std::optional<Interval> support_interval(const Scene& s,
                                         const std::vector<std::string>& assembly,
                                         const Config& cfg = Config::defaults());

/// Validates a scene: non-convex outlines and deep interpenetration are
/// errors; bodies below ground are errors.
std::vector<std::string> check_scene(const Scene& s, const Config& cfg = Config::defaults());

/// Moves a body (and everything attached) so that its reference point lands
/// on `to`. Throws ObjectFixed for fixtures.
Scene apply_ptrans(const Scene& s, const std::string& body, Vec2 to);

/// Rotates a body (and attachments) about a world-space pivot.
Scene apply_protate(const Scene& s, const std::string& body, Vec2 pivot, double angle_deg);

/// Uniform scale about the origin. Used by scale-invariance checks.
Scene scaled(const Scene& s, double k);

} // namespace cdp
