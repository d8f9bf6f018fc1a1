#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cdplus/scene.hpp"

namespace cdp {

/// One entry of the built-in vocabulary that elaborations bottom out at.
struct GroundEntry {
  std::string name;
  std::string category; // spatial-relation, part-label, motion, scalar, ...
  int arity = 0;        // 0 constant, 1 property, 2 relation
  bool near_ground = false;
  bool evaluable = false; // has a geometric/material evaluator
};

/// Fixed registry of ground and near-ground symbols.
class GroundConceptRegistry {
 public:
  static const GroundConceptRegistry& instance();
  bool contains(const std::string& name) const;
  const GroundEntry* find(const std::string& name) const;
  /// All entries sorted by name.
  std::vector<GroundEntry> entries() const;

 private:
  GroundConceptRegistry();
  std::vector<GroundEntry> entries_;
};

/// Evaluates a registered spatial/material relation against a scene.
/// Arguments name bodies or markers. Unknown or non-evaluable symbols throw
/// UnknownSymbol; unknown entities too.
bool eval_relation(const Scene& s, const std::string& symbol,
                   const std::vector<std::string>& args,
                   const Config& cfg = Config::defaults());

/// A named part of a body: a set of boundary edges, or a point (CM), or the
/// whole interior (Bulk).
struct PartRegion {
  std::string body;
  std::string label;
  std::vector<Segment> segs;
  std::optional<Vec2> point;
};

/// Resolves Top / Bottom / Side / End1 / End2 / Front / Back / Boundary /
/// Bulk / CM / Sharp-End / Blunt-End on a body.
PartRegion part_region(const Scene& s, const std::string& body, const std::string& label,
                       const Config& cfg = Config::defaults());

/// Scalar-ish values comparisons can be made over.
using ParamValue = std::variant<double, Ord, Vec2, std::string>;

/// Evaluates a measurement term. With a non-empty `func` it reads the named
/// quantity (hardness, weight, height, width, area, top, bottom, x, y, cm)
/// off the body or marker `arg`; with `func` empty, `arg` is a literal —
/// a number, one of low/mid/high, or a plain string. Unknown quantities and
/// entities throw UnknownSymbol.
ParamValue measure(const Scene& s, const std::string& func, const std::string& arg,
                   const Config& cfg = Config::defaults());

enum class Comparison { Same, Greater, Smaller, Different };

Comparison compare(const ParamValue& a, const ParamValue& b, double eps = 1e-9);

/// Magnitude of the difference; for strings 0/1, for vectors the distance.
double difference(const ParamValue& a, const ParamValue& b);

/// Interior angle at each polygon vertex, degrees.
std::vector<double> vertex_angles(const Polygon& p);

/// True when the body has a tip vertex at most this pointed.
bool body_is_sharp(const RigidBody& b, double max_tip_deg = 45.0);

} // namespace cdp
