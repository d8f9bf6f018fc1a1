#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdplus/config.hpp"
#include "cdplus/dsl.hpp"
#include "cdplus/geometry.hpp"
#include "cdplus/scene.hpp"

namespace cdp {

/// Articulated 2D side-view figure: head (B1), torso (B2), thigh (B3),
/// lower leg (B4) and foot (B5) linked by the neck (BJ1), hip (BJ2),
/// knee (BJ3) and ankle (BJ4), plus an arm chain (A1 upper arm, A2
/// forearm, A3 hand) used for table contacts. The side view collapses
/// left/right pairs into one segment of each kind.

enum class JointState { Tensed, Relaxed };

std::string joint_state_name(JointState s);

/// Fixed joint travel limits, degrees.
struct JointRange {
  double lo = -180, hi = 180;
  bool contains(double a) const { return a >= lo - 1e-9 && a <= hi + 1e-9; }
};

JointRange joint_range(const std::string& joint); // "BJ1".."BJ4"

/// Segment dimensions at scale 1 (scene units; roughly centimetres).
struct SegmentDims {
  double head_len = 24, head_thick = 20;
  double torso_len = 60, torso_thick = 24;
  double thigh_len = 45, thigh_thick = 14;
  double leg_len = 42, leg_thick = 12;
  double foot_len = 26, foot_thick = 8;
  double uarm_len = 30, uarm_thick = 10;
  double farm_len = 28, farm_thick = 9;
  double hand_len = 12, hand_thick = 6;
  double reach() const { return uarm_len + farm_len; }
};

/// Which supports a posture needs and how the figure is seated on them.
struct PostureNeeds {
  bool feet_ground = false;  // standing on the ground plane
  bool seat = false;         // thigh rests on a Seat-tagged top face
  bool seat_is_ground = false;
  bool back = false;         // torso rests against a Back-tagged body
  bool headrest = false;     // head supported at head height
  bool table = false;        // hands rest on a Table-tagged top face
  bool lying = false;        // whole figure horizontal
  bool lying_on_seat = false;
  double back_height = 0.5;  // fraction of torso the support must reach
  double seat_shift = 0;     // 0 = rear of the seat .. 1 = front edge
  bool sideways = false;     // out-of-plane lean; side view unchanged
};

/// A named joint-angle configuration plus its contact requirements.
/// All angles are degrees. `lean` tilts the torso from vertical
/// (positive = backward); `hip`/`knee` are flexion from the straight
/// standing chain; `ankle` deviates from the right-angle foot; `neck`
/// tilts the head relative to the torso line.
struct BodyPosture {
  std::string name;
  double lean = 0, neck = 0, hip = 0, knee = 0, ankle = 0;
  PostureNeeds needs;
};

/// The built-in posture inventory: Standing, SitOnGround,
/// LyingFlatOnGround, LyingFlatOnChair and the seated repertoire
/// BP1..BP11 (torso variants BP1-BP8, lower-leg variants BP9-BP11).
const std::vector<BodyPosture>& standard_postures();
const BodyPosture* find_posture(const std::string& name);
/// The eleven seated postures a chair is evaluated against, in order.
std::vector<std::string> seated_repertoire();

/// World-space joint locations of a posed figure.
struct BodyPose {
  Vec2 pelvis, neck, head_top;
  Vec2 knee, ankle, toe;
  Vec2 shoulder, elbow, wrist, hand_tip;
};

struct BodyModel {
  std::string name = "Person";
  Vec2 pelvis{0, 0};
  int facing = 1;   // +1 faces +x, -1 faces -x
  double scale = 1;
  SegmentDims dims; // pre-scale
  Material mat;     // used for every segment polygon

  // Current configuration.
  std::string posture = "Standing";
  double lean = 0, neck_a = 0, hip_a = 0, knee_a = 0, ankle_a = 0;
  double shoulder_a = 0, elbow_a = 0, wrist_a = 0; // arm: 0 = hanging along torso
  std::set<std::string> resting;      // achieved contacts: ground-feet,
                                      // seat, ground, back, headrest,
                                      // table, lying

  double seg(double v) const { return v * scale; }
};

/// Builds a model from its DSL declaration (posture is NOT applied; call
/// set_posture with the declaration's scene to seat it).
BodyModel body_from_decl(const BodyDecl& d);

/// Joint positions implied by the model's current angles and pelvis.
BodyPose compute_pose(const BodyModel& m);

/// Applies a posture: validates joint ranges, finds the required
/// supports in the scene, re-seats the pelvis and records the achieved
/// contacts. Throws Unrealizable for out-of-range angles and
/// ContactImpossible when a required support is missing.
BodyModel set_posture(const BodyModel& m, const BodyPosture& bp, const Scene& s,
                      const Config& cfg = Config::defaults());
/// Same, looking the posture up by name (UnknownSymbol when absent).
BodyModel set_posture(const BodyModel& m, const std::string& posture, const Scene& s,
                      const Config& cfg = Config::defaults());

/// The figure as scene polygons: ids `<name>.B1` .. `<name>.B5`,
/// `<name>.A1` .. `<name>.A3`, each tagged "Person" plus its segment id.
std::vector<RigidBody> body_polygons(const BodyModel& m);

/// Scene plus the figure's polygons, chained together with attachments.
Scene with_body(const Scene& s, const BodyModel& m);

/// Ids body_polygons would produce, in order.
std::vector<std::string> body_part_ids(const BodyModel& m);

} // namespace cdp
