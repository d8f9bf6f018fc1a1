#include "cdplus/body.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdplus/errors.hpp"

namespace cdp {

std::string joint_state_name(JointState s) {
  return s == JointState::Tensed ? "tensed" : "relaxed";
}

JointRange joint_range(const std::string& joint) {
  if (joint == "BJ1") return {-45, 45};   // neck
  if (joint == "BJ2") return {-10, 130};  // hip flexion
  if (joint == "BJ3") return {-5, 150};   // knee flexion
  if (joint == "BJ4") return {-30, 30};   // ankle
  throw UnknownSymbol("unknown joint '" + joint + "' (want BJ1..BJ4)");
}

namespace {

constexpr double kLeanLimit = 90; // whole-torso tilt from vertical
constexpr double kSeatMargin = 0.15;

std::vector<BodyPosture> make_postures() {
  std::vector<BodyPosture> v;
  auto add = [&](const char* name, double lean, double neck, double hip, double knee,
                 double ankle, const PostureNeeds& needs) {
    BodyPosture p;
    p.name = name;
    p.lean = lean;
    p.neck = neck;
    p.hip = hip;
    p.knee = knee;
    p.ankle = ankle;
    p.needs = needs;
    v.push_back(std::move(p));
  };

  PostureNeeds stand;
  stand.feet_ground = true;
  add("Standing", 0, 0, 0, 0, 0, stand);

  PostureNeeds onground;
  onground.seat = true;
  onground.seat_is_ground = true;
  add("SitOnGround", 0, 0, 90, 0, 0, onground);

  PostureNeeds lie;
  lie.lying = true;
  add("LyingFlatOnGround", 90, 0, 0, 0, 0, lie);

  PostureNeeds lieseat;
  lieseat.lying = true;
  lieseat.lying_on_seat = true;
  add("LyingFlatOnChair", 90, 0, 0, 90, 0, lieseat);

  PostureNeeds seat;
  seat.seat = true;

  // Torso repertoire.
  add("BP1", 0, 0, 90, 90, 0, seat); // upright, clear of the back

  PostureNeeds midback = seat;
  midback.back = true;
  add("BP2", 10, 0, 80, 90, 0, midback); // torso against the back

  PostureNeeds highback = midback; // slid forward, higher contact point
  highback.back_height = 0.75;
  highback.seat_shift = 0.3;
  add("BP3", 25, 0, 65, 90, 0, highback);

  PostureNeeds headrest = midback;
  headrest.headrest = true;
  add("BP4", 20, 0, 70, 90, 0, headrest); // reclined, head supported

  add("BP5", 20, -20, 70, 90, 0, midback); // reclined, head held level

  PostureNeeds sideways = seat; // out-of-plane lean; same side view
  sideways.sideways = true;
  add("BP6", 0, 0, 90, 90, 0, sideways);

  PostureNeeds attable = seat;
  attable.table = true;
  add("BP7", -30, 0, 120, 90, 0, attable); // forward onto a table

  PostureNeeds front = seat; // shifted toward the seat's front edge
  front.seat_shift = 0.6;
  add("BP8", 0, 0, 90, 90, 0, front);

  // Lower-leg repertoire.
  add("BP9", 0, 0, 90, 90, 0, seat);   // lower leg vertical
  add("BP10", 0, 0, 90, 130, 0, seat); // bent back under the seat
  add("BP11", 0, 0, 90, 30, 0, seat);  // stretched forward
  return v;
}

} // namespace

const std::vector<BodyPosture>& standard_postures() {
  static const std::vector<BodyPosture> all = make_postures();
  return all;
}

const BodyPosture* find_posture(const std::string& name) {
  for (auto& p : standard_postures())
    if (p.name == name) return &p;
  return nullptr;
}

std::vector<std::string> seated_repertoire() {
  std::vector<std::string> v;
  for (int i = 1; i <= 11; i++) v.push_back("BP" + std::to_string(i));
  return v;
}

BodyModel body_from_decl(const BodyDecl& d) {
  BodyModel m;
  m.name = d.name;
  m.pelvis = d.at;
  m.facing = d.facing < 0 ? -1 : 1;
  m.scale = d.scale;
  m.posture = d.posture;
  return m;
}

BodyPose compute_pose(const BodyModel& m) {
  const SegmentDims& d = m.dims;
  double sc = m.scale;
  double f = m.facing;
  auto mir = [&](Vec2 v) { return Vec2{f * v.x, v.y}; };

  Vec2 torso = rotated({0, 1}, m.lean);
  Vec2 thigh = rotated({0, -1}, m.lean + m.hip_a);
  Vec2 leg = rotated(thigh, -m.knee_a);
  Vec2 foot = rotated(leg, 90 + m.ankle_a);

  BodyPose p;
  p.pelvis = m.pelvis;
  p.neck = p.pelvis + mir(torso) * (d.torso_len * sc);
  p.head_top = p.neck + mir(rotated(torso, m.neck_a)) * (d.head_len * sc);
  p.knee = p.pelvis + mir(thigh) * (d.thigh_len * sc);
  p.ankle = p.knee + mir(leg) * (d.leg_len * sc);
  p.toe = p.ankle + mir(foot) * (d.foot_len * sc);

  p.shoulder = p.pelvis + mir(torso) * (0.9 * d.torso_len * sc);
  Vec2 uarm = rotated({-torso.x, -torso.y}, m.shoulder_a);
  p.elbow = p.shoulder + mir(uarm) * (d.uarm_len * sc);
  Vec2 farm = rotated(uarm, m.elbow_a);
  p.wrist = p.elbow + mir(farm) * (d.farm_len * sc);
  Vec2 hand = rotated(farm, m.wrist_a);
  p.hand_tip = p.wrist + mir(hand) * (d.hand_len * sc);
  return p;
}

namespace {

struct TopFace {
  double y = 0;
  Interval span;
};

/// The level top surface of a body: hull of its upward faces at max height.
std::optional<TopFace> top_face(const RigidBody& b, const Config& cfg) {
  Polygon w = b.world();
  double top = w.y_range().hi;
  double lim = std::cos(cfg.angle_tol_deg * M_PI / 180.0);
  double sintol = std::sin(cfg.angle_tol_deg * M_PI / 180.0);
  std::optional<Interval> span;
  auto es = w.edges();
  for (size_t i = 0; i < es.size(); i++) {
    if (w.edge_normal(i).y < lim) continue;
    double hi = std::max(es[i].a.y, es[i].b.y);
    if (hi < top - norm(es[i].b - es[i].a) * sintol - 1e-9) continue;
    Interval ex{std::min(es[i].a.x, es[i].b.x), std::max(es[i].a.x, es[i].b.x)};
    span = span ? hull(*span, ex) : ex;
  }
  if (!span) return std::nullopt;
  return TopFace{top, *span};
}

double deg(double rad) { return rad * 180.0 / M_PI; }

double signed_angle(Vec2 from, Vec2 to) {
  return deg(std::atan2(cross(from, to), dot(from, to)));
}

} // namespace

BodyModel set_posture(const BodyModel& m, const BodyPosture& bp, const Scene& s,
                      const Config& cfg) {
  auto range_check = [&](const char* joint, double v) {
    JointRange r = joint_range(joint);
    if (!r.contains(v)) {
      std::ostringstream os;
      os << joint << " angle " << v << " is outside [" << r.lo << ", " << r.hi
         << "] for posture '" << bp.name << "'";
      throw Unrealizable(os.str());
    }
  };
  range_check("BJ1", bp.neck);
  range_check("BJ2", bp.hip);
  range_check("BJ3", bp.knee);
  range_check("BJ4", bp.ankle);
  if (bp.lean < -kLeanLimit - 1e-9 || bp.lean > kLeanLimit + 1e-9)
    throw Unrealizable("torso lean " + std::to_string(bp.lean) +
                       " is outside [-90, 90] for posture '" + bp.name + "'");

  BodyModel out = m;
  out.posture = bp.name;
  out.lean = bp.lean;
  out.neck_a = bp.neck;
  out.hip_a = bp.hip;
  out.knee_a = bp.knee;
  out.ankle_a = bp.ankle;
  out.shoulder_a = 0;
  out.elbow_a = 0;
  out.wrist_a = 0;
  out.resting.clear();

  const SegmentDims& d = out.dims;
  double sc = out.scale;
  double f = out.facing;

  auto find_top = [&](const char* tag) -> std::optional<std::pair<std::string, TopFace>> {
    std::optional<std::pair<std::string, TopFace>> best;
    for (auto& b : s.bodies) {
      if (!b.has_tag(tag)) continue;
      auto tf = top_face(b, cfg);
      if (!tf) continue;
      if (!best || tf->y > best->second.y + 1e-9 ||
          (std::abs(tf->y - best->second.y) <= 1e-9 && b.id < best->first))
        best = {b.id, *tf};
    }
    return best;
  };

  auto seat_x = [&](const TopFace& tf, double shift) {
    double margin = kSeatMargin * tf.span.len();
    double rear = f > 0 ? tf.span.lo : tf.span.hi;
    return rear + f * (margin + shift * (tf.span.len() - 2 * margin));
  };

  if (bp.needs.seat) {
    if (bp.needs.seat_is_ground) {
      out.pelvis.y = s.ground_y + d.thigh_thick / 2 * sc;
      out.resting.insert("seat");
      out.resting.insert("ground");
    } else {
      auto seat = find_top("Seat");
      if (!seat)
        throw ContactImpossible("no sittable surface (Seat tag) in scene '" + s.name + "'");
      out.pelvis.x = seat_x(seat->second, bp.needs.seat_shift);
      out.pelvis.y = seat->second.y + d.thigh_thick / 2 * sc;
      out.resting.insert("seat");
    }
    out.elbow_a = 90; // forearms rest forward when seated
  }

  if (bp.needs.lying) {
    if (bp.needs.lying_on_seat) {
      auto seat = find_top("Seat");
      if (!seat)
        throw ContactImpossible("no seat surface to lie on in scene '" + s.name + "'");
      out.pelvis.x = seat_x(seat->second, 0);
      out.pelvis.y = seat->second.y + d.torso_thick / 2 * sc;
      out.resting.insert("seat");
    } else {
      out.pelvis.y = s.ground_y + d.torso_thick / 2 * sc;
      out.resting.insert("ground");
    }
    out.resting.insert("lying");
  }

  if (bp.needs.feet_ground) {
    out.pelvis.y = s.ground_y + (d.foot_thick / 2 + d.leg_len + d.thigh_len) * sc;
    out.resting.insert("ground-feet");
  }

  double cos_lean = std::cos(out.lean * M_PI / 180.0);
  auto reaches = [&](std::initializer_list<const char*> tags, double top_req) {
    Interval behind = f > 0
        ? Interval{out.pelvis.x - d.torso_len * sc, out.pelvis.x + d.thigh_thick * sc}
        : Interval{out.pelvis.x - d.thigh_thick * sc, out.pelvis.x + d.torso_len * sc};
    for (auto& b : s.bodies) {
      bool tagged = false;
      for (const char* t : tags) tagged = tagged || b.has_tag(t);
      if (!tagged) continue;
      Polygon w = b.world();
      if (!intersect(w.x_range(), behind)) continue;
      if (w.y_range().hi + 1e-9 >= top_req) return true;
    }
    return false;
  };

  if (bp.needs.back) {
    double req = out.pelvis.y + bp.needs.back_height * d.torso_len * sc * cos_lean;
    if (!reaches({"Back"}, req))
      throw ContactImpossible("no back support at the required height in scene '" +
                              s.name + "'");
    out.resting.insert("back");
  }
  if (bp.needs.headrest) {
    double req = out.pelvis.y + (d.torso_len + 0.5 * d.head_len) * sc * cos_lean;
    if (!reaches({"Headrest", "Back"}, req))
      throw ContactImpossible("no headrest-height support in scene '" + s.name + "'");
    out.resting.insert("headrest");
  }

  if (bp.needs.table) {
    Vec2 torso = rotated({0, 1}, out.lean);
    Vec2 shoulder = out.pelvis + Vec2{f * torso.x, torso.y} * (0.9 * d.torso_len * sc);
    double l1 = d.uarm_len * sc, l2 = d.farm_len * sc;
    bool placed = false;
    for (auto& b : s.bodies) {
      if (!b.has_tag("Table")) continue;
      auto tf = top_face(b, cfg);
      if (!tf) continue;
      double near_edge = f > 0 ? tf->span.lo : tf->span.hi;
      double wx = near_edge + f * std::min(6.0 * sc, tf->span.len() / 2);
      Vec2 wrist{wx, tf->y + d.hand_thick / 2 * sc};
      Vec2 rel{f * (wrist.x - shoulder.x), wrist.y - shoulder.y};
      double dist = norm(rel);
      if (dist > l1 + l2 - 1e-9 || dist < std::abs(l1 - l2) + 1e-9) continue;
      // Two-link solution; of the two elbow positions take the lower one.
      double cosg = (dist * dist + l1 * l1 - l2 * l2) / (2 * dist * l1);
      double g = deg(std::acos(std::clamp(cosg, -1.0, 1.0)));
      Vec2 chord = rel * (1.0 / dist);
      Vec2 ua1 = rotated(chord, g), ua2 = rotated(chord, -g);
      Vec2 ua = ua1.y < ua2.y ? ua1 : ua2;
      Vec2 fa = normalized(rel - ua * l1);
      Vec2 hang{-torso.x, -torso.y};
      out.shoulder_a = signed_angle(hang, ua);
      out.elbow_a = signed_angle(ua, fa);
      out.wrist_a = signed_angle(fa, {1, 0}); // palm flat on the top
      placed = true;
      break;
    }
    if (!placed)
      throw ContactImpossible("no table top within arm reach in scene '" + s.name + "'");
    out.resting.insert("table");
  }

  return out;
}

BodyModel set_posture(const BodyModel& m, const std::string& posture, const Scene& s,
                      const Config& cfg) {
  const BodyPosture* bp = find_posture(posture);
  if (!bp) throw UnknownSymbol("unknown posture '" + posture + "'");
  return set_posture(m, *bp, s, cfg);
}

namespace {

RigidBody slab(const std::string& id, Vec2 a, Vec2 b, double thick, const Material& mat) {
  Vec2 h = perp(normalized(b - a)) * (thick / 2);
  RigidBody rb;
  rb.id = id;
  rb.shape.pts = {a - h, b - h, b + h, a + h};
  if (rb.shape.area() < 0) std::reverse(rb.shape.pts.begin(), rb.shape.pts.end());
  rb.mat = mat;
  return rb;
}

} // namespace

std::vector<std::string> body_part_ids(const BodyModel& m) {
  std::vector<std::string> ids;
  for (const char* seg : {"B1", "B2", "B3", "B4", "B5", "A1", "A2", "A3"})
    ids.push_back(m.name + "." + seg);
  return ids;
}

std::vector<RigidBody> body_polygons(const BodyModel& m) {
  const SegmentDims& d = m.dims;
  double sc = m.scale;
  BodyPose p = compute_pose(m);
  std::vector<RigidBody> out;
  auto add = [&](const char* seg, Vec2 a, Vec2 b, double thick) {
    RigidBody rb = slab(m.name + "." + seg, a, b, thick * sc, m.mat);
    rb.tags = {"Person", seg};
    out.push_back(std::move(rb));
  };
  add("B1", p.neck, p.head_top, d.head_thick);
  add("B2", p.pelvis, p.neck, d.torso_thick);
  add("B3", p.pelvis, p.knee, d.thigh_thick);
  add("B4", p.knee, p.ankle, d.leg_thick);
  add("B5", p.ankle, p.toe, d.foot_thick);
  add("A1", p.shoulder, p.elbow, d.uarm_thick);
  add("A2", p.elbow, p.wrist, d.farm_thick);
  add("A3", p.wrist, p.hand_tip, d.hand_thick);
  return out;
}

Scene with_body(const Scene& s, const BodyModel& m) {
  Scene out = s;
  for (auto& b : body_polygons(m)) out.bodies.push_back(b);
  auto link = [&](const char* a, const char* b) {
    out.attachments.push_back({m.name + "." + a, m.name + "." + b, false});
  };
  link("B1", "B2");
  link("B2", "B3");
  link("B3", "B4");
  link("B4", "B5");
  link("B2", "A1");
  link("A1", "A2");
  link("A2", "A3");
  return out;
}

} // namespace cdp
