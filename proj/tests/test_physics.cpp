#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cdplus/body.hpp"
#include "cdplus/dsl.hpp"
#include "cdplus/errors.hpp"
#include "cdplus/graph.hpp"
#include "cdplus/physics.hpp"
#include "cdplus/scene.hpp"

using namespace cdp;

namespace {

Scene scene_of(const std::string& text) { return parse_scene(text); }

bool close(double a, double b, double eps = 1e-9) { return std::abs(a - b) <= eps; }

const char* kStool = R"((scene stool
  (obj Top (rect 40 48) :at (0 0) :tags (Seat))))";

const char* kChair = R"((scene chair4
  (obj LegR (rect 6 42) :at (0 0) :tags (Legs))
  (obj LegF (rect 6 42) :at (34 0) :tags (Legs))
  (obj Seat (rect 45 6) :at (0 42) :tags (Seat))
  (obj Back (rect 6 77) :at (-6 48) :tags (Back))
  (attach LegR Seat) (attach LegF Seat) (attach Seat Back)))";

const char* kDeskChair = R"((scene deskchair
  (obj LegR (rect 6 42) :at (0 0) :tags (Legs))
  (obj LegF (rect 6 42) :at (34 0) :tags (Legs))
  (obj Seat (rect 45 6) :at (0 42) :tags (Seat))
  (obj Back (rect 6 77) :at (-6 48) :tags (Back))
  (obj Desk (rect 52 6) :at (60 66) :tags (Table))
  (obj DeskLeg (rect 8 62) :at (104 4) :tags (Legs))
  (obj DeskBase (rect 40 4) :at (76 0) :tags (Legs))
  (attach LegR Seat) (attach LegF Seat) (attach Seat Back)
  (attach Desk DeskLeg) (attach DeskLeg DeskBase)))";

const char* kPedestal = R"((scene pedestal
  (obj Base (rect 16 4) :at (14.5 0) :tags (Legs))
  (obj Column (rect 8 38) :at (18.5 4) :tags (Legs))
  (obj Seat (rect 45 6) :at (0 42) :tags (Seat))
  (obj Back (rect 6 77) :at (-6 48) :tags (Back))
  (attach Base Column) (attach Column Seat) (attach Seat Back)))";

const char* kPedestalDesk = R"((scene pedestaldesk
  (obj Base (rect 16 4) :at (14.5 0) :tags (Legs))
  (obj Column (rect 8 38) :at (18.5 4) :tags (Legs))
  (obj Seat (rect 45 6) :at (0 42) :tags (Seat))
  (obj Back (rect 6 77) :at (-6 48) :tags (Back))
  (obj Desk (rect 52 6) :at (60 66) :tags (Table))
  (obj DeskLeg (rect 8 62) :at (104 4) :tags (Legs))
  (obj DeskBase (rect 40 4) :at (76 0) :tags (Legs))
  (attach Base Column) (attach Column Seat) (attach Seat Back)
  (attach Desk DeskLeg) (attach DeskLeg DeskBase)))";

const char* kEnclosedChair = R"((scene boxchair
  (obj Base (rect 45 42) :at (0 0))
  (obj Seat (rect 45 6) :at (0 42) :tags (Seat))
  (obj Back (rect 6 77) :at (-6 48) :tags (Back))
  (attach Base Seat) (attach Seat Back)))";

const char* kPanelDesk = R"((scene paneled
  (obj LegR (rect 6 42) :at (0 0) :tags (Legs))
  (obj LegF (rect 6 42) :at (34 0) :tags (Legs))
  (obj Seat (rect 45 6) :at (0 42) :tags (Seat))
  (obj Back (rect 6 77) :at (-6 48) :tags (Back))
  (obj Desk (rect 52 6) :at (60 66) :tags (Table) :fixed)
  (obj Panel (rect 6 66) :at (100 0))
  (attach LegR Seat) (attach LegF Seat) (attach Seat Back)
  (attach Desk Panel)))";

Scene two_boxes(double bw, double bh, double tw, double th, double x, double y) {
  Scene s;
  s.name = "pair";
  RigidBody base;
  base.id = "Base";
  base.shape = make_box(bw, bh);
  RigidBody top;
  top.id = "Top";
  top.shape = make_box(tw, th);
  top.at = {x, y};
  s.bodies = {base, top};
  return s;
}

/// Slanted rod, ground contact at its low end, high end resting exactly
/// on the prop's top corner (contact is on the rod's underside, within
/// the level-face tolerance).
Scene rod_prop() {
  double th = 4.0 * M_PI / 180.0;
  Scene s;
  s.name = "rodprop";
  RigidBody rod;
  rod.id = "Rod";
  rod.shape = make_box(60, 4);
  rod.angle = 4;
  RigidBody prop;
  prop.id = "Prop";
  prop.shape = make_box(8, 40 * std::sin(th));
  prop.at = {40 * std::cos(th), 0};
  s.bodies = {rod, prop};
  return s;
}

int count_kind(const Trace& t, EventKind k) {
  int n = 0;
  for (auto& e : t.events) n += e.kind == k ? 1 : 0;
  return n;
}

} // namespace

TEST_CASE("stability follows the CM against the support hull") {
  Scene s = two_boxes(40, 10, 10, 10, 15, 10);
  auto st = stability(s, {"Top"});
  CHECK(st.kind == Stability::Stable);
  CHECK(!st.marginal);
  CHECK(close(st.cm_x, 20));
  REQUIRE(st.support.has_value());
  CHECK(close(st.support->lo, 15));
  CHECK(close(st.support->hi, 25));

  SUBCASE("overhang within the contact span stays stable") {
    Scene o = two_boxes(40, 10, 10, 10, 33, 10); // contact [33,40], cm 38
    CHECK(stability(o, {"Top"}).kind == Stability::Stable);
  }
  SUBCASE("CM past the edge tips over it") {
    Scene o = two_boxes(40, 10, 10, 10, 36, 10); // contact [36,40], cm 41
    auto v = stability(o, {"Top"});
    CHECK(v.kind == Stability::RotateFall);
    CHECK(v.direction == 1);
  }
  SUBCASE("a floating body has no support interval") {
    Scene o = two_boxes(40, 10, 10, 10, 15, 25);
    CHECK(stability(o, {"Top"}).kind == Stability::Unsupported);
  }
  SUBCASE("verdicts are invariant under uniform scaling") {
    for (double k : {0.1, 10.0}) {
      CHECK(stability(scaled(s, k), {"Top"}).kind == Stability::Stable);
      Scene o = two_boxes(40, 10, 10, 10, 36, 10);
      CHECK(stability(scaled(o, k), {"Top"}).kind == Stability::RotateFall);
    }
  }
}

TEST_CASE("randomized two-box configurations agree with the interval oracle") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> bw(10, 60), tw(5, 30), hh(5, 20);
  std::uniform_real_distribution<double> unit(0, 1);
  int checked = 0;
  while (checked < 1000) {
    double w0 = bw(rng), h0 = hh(rng), w1 = tw(rng), h1 = hh(rng);
    double x = -w1 - 5 + unit(rng) * (w0 + w1 + 10);
    bool floating = unit(rng) < 0.3;
    double y = h0 + (floating ? 0.5 + unit(rng) * 7.5 : 0);

    // Independent oracle: touching iff resting with x-overlap; then the
    // CM x must sit inside the overlap interval.
    double lo = std::max(x, 0.0), hi = std::min(x + w1, w0);
    bool touching = !floating && lo <= hi;
    double cm = x + w1 / 2;
    if (touching && (std::abs(cm - lo) < 1e-7 || std::abs(cm - hi) < 1e-7))
      continue; // skip eps-knife-edge draws
    Scene s = two_boxes(w0, h0, w1, h1, x, y);
    auto v = stability(s, {"Top"});
    if (!touching) {
      CHECK(v.kind == Stability::Unsupported);
    } else if (cm < lo) {
      CHECK(v.kind == Stability::RotateFall);
      CHECK(v.direction == -1);
    } else if (cm > hi) {
      CHECK(v.kind == Stability::RotateFall);
      CHECK(v.direction == 1);
    } else {
      CHECK(v.kind == Stability::Stable);
    }
    checked++;
  }
  CHECK(checked == 1000);
}

TEST_CASE("settle drops unsupported bodies to first contact") {
  SUBCASE("an already-settled scene yields an empty trace") {
    Scene s = two_boxes(40, 10, 10, 10, 15, 10);
    auto t = settle(s);
    CHECK(t.events.empty());
    CHECK(scenes_equal(t.final, s));
  }
  SUBCASE("a floating box lands on the one below") {
    Scene s = two_boxes(40, 10, 10, 10, 32, 30);
    auto t = settle(s);
    REQUIRE(t.events.size() == 1);
    CHECK(t.events[0].kind == EventKind::FallToGround);
    CHECK(t.events[0].subject == "Top");
    CHECK(close(t.final.find("Top")->at.y, 10));
    CHECK(close(t.final.find("Top")->at.x, 32));
    CHECK(settle(t.final).events.empty()); // idempotent
  }
  SUBCASE("removing the supporter makes the load fall") {
    Scene s = two_boxes(20, 10, 20, 10, 0, 10);
    s.erase("Base");
    auto t = settle(s);
    REQUIRE(t.events.size() == 1);
    CHECK(t.events[0].kind == EventKind::FallToGround);
    CHECK(close(t.final.find("Top")->at.y, 0));
  }
  SUBCASE("attached pairs fall as one piece") {
    Scene s;
    s.name = "pair";
    RigidBody a, b;
    a.id = "A";
    a.shape = make_box(20, 10);
    a.at = {0, 30};
    b.id = "B";
    b.shape = make_box(10, 5);
    b.at = {5, 40};
    s.bodies = {a, b};
    s.attachments.push_back({"A", "B", false});
    auto t = settle(s);
    REQUIRE(t.events.size() == 1);
    CHECK(t.events[0].assembly == std::vector<std::string>{"A", "B"});
    CHECK(close(t.final.find("A")->at.y, 0));
    CHECK(close(t.final.find("B")->at.y, 10));
  }
  SUBCASE("fixtures hold everything on them in place") {
    Scene s;
    RigidBody shelf, cup;
    shelf.id = "Shelf";
    shelf.shape = make_box(30, 4);
    shelf.at = {0, 50};
    shelf.fixed = true;
    cup.id = "Cup";
    cup.shape = make_box(6, 6);
    cup.at = {10, 54};
    s.bodies = {shelf, cup};
    CHECK(settle(s).events.empty());
  }
}

TEST_CASE("a propped slanted rod rotate-falls flat when the prop goes") {
  Scene s = rod_prop();
  CHECK(check_scene(s).empty());

  // With the prop: supported at both ends, CM between them.
  auto held = stability(s, {"Rod"});
  CHECK(held.kind == Stability::Stable);

  Scene cut = s;
  cut.erase("Prop");
  auto t = settle(cut);
  REQUIRE(t.events.size() == 1);
  CHECK(t.events[0].kind == EventKind::RotateFall);
  CHECK(t.events[0].direction == 1);
  const RigidBody* rod = t.final.find("Rod");
  REQUIRE(rod != nullptr);
  CHECK(close(rod->world().y_range().lo, 0, 1e-6));
  CHECK(close(rod->world().y_range().hi, 4, 1e-6));
  CHECK(close(rod->world().x_range().hi, 60, 1e-6));
  CHECK(settle(t.final).events.empty());

  SUBCASE("the same story holds at other scales") {
    for (double k : {0.1, 10.0}) {
      Scene sk = scaled(cut, k);
      auto tk = settle(sk);
      REQUIRE(tk.events.size() == 1);
      CHECK(tk.events[0].kind == EventKind::RotateFall);
      CHECK(close(tk.final.find("Rod")->world().y_range().hi, 4 * k, 1e-6 * k));
    }
  }
}

TEST_CASE("crush squashes strictly softer targets under enough force") {
  Scene s;
  s.name = "press";
  RigidBody anvil, soft, tool;
  anvil.id = "Anvil";
  anvil.shape = make_box(30, 10);
  anvil.mat = {Ord::High, Ord::High};
  soft.id = "Soft";
  soft.shape = make_box(10, 10);
  soft.at = {5, 10};
  soft.mat = {Ord::Low, Ord::Low};
  tool.id = "Tool";
  tool.shape = make_box(12, 8);
  tool.at = {4, 20};
  tool.mat = {Ord::High, Ord::High};
  s.bodies = {anvil, soft, tool};

  SUBCASE("hard heavy tool flattens the soft box") {
    auto t = crush(s, "Tool", "Soft", Ord::High);
    REQUIRE(count_kind(t, EventKind::Crush) == 1);
    const RigidBody* sq = t.final.find("Soft");
    CHECK(close(sq->world().y_range().lo, 10));
    CHECK(close(sq->world().y_range().len(), 1)); // height / 10
    CHECK(count_kind(t, EventKind::FallToGround) == 1); // tool follows it down
    CHECK(close(t.final.find("Tool")->world().y_range().lo, 11));
    CHECK(settle(t.final).events.empty());
  }
  SUBCASE("a softer tool cannot crush a harder target") {
    auto t = crush(s, "Soft", "Anvil", Ord::High);
    CHECK(count_kind(t, EventKind::NoEffect) == 1);
    CHECK(scenes_equal(t.final, s));
  }
  SUBCASE("equal hardness is a tie and does nothing") {
    auto t = crush(s, "Tool", "Anvil", Ord::High);
    CHECK(count_kind(t, EventKind::NoEffect) == 1);
    CHECK(scenes_equal(t.final, s));
  }
  SUBCASE("a feeble push below the resistance does nothing") {
    Scene s2;
    s2.name = "press2";
    RigidBody pin;
    pin.id = "Pin";
    pin.shape = make_box(2, 2);
    pin.at = {8, 20};
    pin.mat = {Ord::Mid, Ord::Low};
    s2.bodies = {anvil, soft, pin};
    auto t = crush(s2, "Pin", "Soft", Ord::Low); // 1+1 < resistance 3
    CHECK(count_kind(t, EventKind::NoEffect) == 1);
    CHECK(scenes_equal(t.final, s2));
  }
}

TEST_CASE("pierce dents soft targets only with the sharp end presented") {
  Scene s;
  s.name = "stab";
  RigidBody slab, awl;
  slab.id = "Slab";
  slab.shape = make_box(40, 10);
  slab.mat = {Ord::Low, Ord::Mid};
  awl.id = "Awl";
  awl.shape.pts = {{3, 0}, {6, 12}, {0, 12}}; // tip down at (3,0)
  awl.at = {10, 10};
  awl.mat = {Ord::High, Ord::Mid};
  s.bodies = {slab, awl};

  SUBCASE("sharp end, rapid and forceful: an indentation mirroring the tip") {
    auto t = pierce(s, "Awl", "Sharp", "Slab");
    CHECK(count_kind(t, EventKind::Indent) == 1);
    const RigidBody* hit = t.final.find("Slab");
    REQUIRE(hit->dents.size() == 1);
    CHECK(hit->dents[0].profile == "Awl");
    CHECK(close(hit->dents[0].region.y_range().lo, 9));  // depth 1 = extent/10
    CHECK(close(hit->dents[0].region.y_range().hi, 10));
    CHECK(close(hit->dents[0].region.x_range().lo, 12.75)); // tip width at depth
    CHECK(close(hit->dents[0].region.x_range().hi, 13.25));
    CHECK(hit->world().pts.size() == slab.world().pts.size()); // outline kept
  }
  SUBCASE("the blunt end does not make much of an indentation") {
    auto t = pierce(s, "Awl", "Blunt", "Slab");
    CHECK(count_kind(t, EventKind::NoEffect) == 1);
    CHECK(t.final.find("Slab")->dents.empty());
  }
  SUBCASE("without rapid motion nothing happens") {
    auto t = pierce(s, "Awl", "Sharp", "Slab", false, true);
    CHECK(count_kind(t, EventKind::NoEffect) == 1);
  }
  SUBCASE("a tool softer than the target bounces off") {
    Scene s2 = s;
    s2.find("Awl")->mat.hardness = Ord::Low;
    s2.find("Slab")->mat.hardness = Ord::High;
    auto t = pierce(s2, "Awl", "Sharp", "Slab");
    CHECK(count_kind(t, EventKind::NoEffect) == 1);
  }
  SUBCASE("sharp end facing away raises NotOriented") {
    Scene s2;
    s2.name = "stab2";
    RigidBody up;
    up.id = "AwlUp";
    up.shape.pts = {{0, 0}, {6, 0}, {3, 12}}; // tip up at (3,12)
    up.at = {10, 10};
    up.mat = {Ord::High, Ord::Mid};
    s2.bodies = {slab, up};
    CHECK_THROWS_AS(pierce(s2, "AwlUp", "Sharp", "Slab"), NotOriented);
  }
}

TEST_CASE("joint states mirror which segments are externally supported") {
  Scene empty;
  empty.name = "floor";
  BodyModel base;

  auto standing = set_posture(base, "Standing", empty);
  auto r = joint_states(standing, empty);
  CHECK(r.tensed == 4);
  CHECK(r.comfort == Comfort::NotComfortable);
  for (auto& [j, st] : r.joints) CHECK(st == JointState::Tensed);

  auto onground = set_posture(base, "SitOnGround", empty);
  r = joint_states(onground, empty);
  CHECK(r.joints.at("BJ1") == JointState::Tensed);
  CHECK(r.joints.at("BJ2") == JointState::Tensed);
  CHECK(r.joints.at("BJ3") == JointState::Relaxed);
  CHECK(r.joints.at("BJ4") == JointState::Relaxed);
  CHECK(r.tensed == 2);
  CHECK(r.comfort == Comfort::ReasonablyComfortable);

  Scene stool = scene_of(kStool);
  r = joint_states(set_posture(base, "BP1", stool), stool);
  CHECK(r.tensed == 2);
  CHECK(r.comfort == Comfort::ReasonablyComfortable);

  Scene chair = scene_of(kChair);
  r = joint_states(set_posture(base, "BP2", chair), chair);
  CHECK(r.joints.at("BJ2") == JointState::Relaxed); // back support
  CHECK(r.tensed == 1);
  CHECK(r.comfort == Comfort::Comfortable);

  r = joint_states(set_posture(base, "BP4", chair), chair);
  CHECK(r.tensed == 0);
  CHECK(r.comfort == Comfort::Comfortable);

  Scene desk = scene_of(kDeskChair);
  r = joint_states(set_posture(base, "BP7", desk), desk);
  CHECK(r.joints.at("BJ2") == JointState::Relaxed); // leaning on the table
  CHECK(r.tensed == 1);
  CHECK(r.comfort == Comfort::Comfortable);

  r = joint_states(set_posture(base, "LyingFlatOnGround", empty), empty);
  CHECK(r.tensed == 0);
  CHECK(r.comfort == Comfort::Comfortable);

  CHECK(comfort_name(Comfort::Comfortable) == "COMF");
  CHECK(comfort_name(Comfort::ReasonablyComfortable) == "R-COMF");
  CHECK(comfort_name(Comfort::NotComfortable) == "NOT-COMF");

  SUBCASE("comfort is monotone in the tensed-joint count") {
    for (auto& bp : standard_postures()) {
      BodyModel m;
      try {
        m = set_posture(m, bp, desk);
      } catch (const Error&) {
        continue;
      }
      auto jr = joint_states(m, desk);
      if (jr.tensed <= 1) CHECK(jr.comfort == Comfort::Comfortable);
      if (jr.tensed == 2) CHECK(jr.comfort == Comfort::ReasonablyComfortable);
      if (jr.tensed >= 3) CHECK(jr.comfort == Comfort::NotComfortable);
    }
  }
}

TEST_CASE("lower-leg repositioning is blocked by enclosing structure") {
  BodyModel base;

  Scene desk = scene_of(kDeskChair);
  auto seated = set_posture(base, "BP1", desk);
  CHECK(reachable(seated, "BP9", desk));
  CHECK(reachable(seated, "BP10", desk)); // open under the seat
  CHECK(reachable(seated, "BP11", desk)); // open in front

  Scene boxy = scene_of(kEnclosedChair);
  auto onbox = set_posture(base, "BP1", boxy);
  CHECK(reachable(onbox, "BP9", boxy));
  CHECK_FALSE(reachable(onbox, "BP10", boxy)); // solid base blocks the swing
  CHECK(reachable(onbox, "BP11", boxy));

  Scene panel = scene_of(kPanelDesk);
  auto atpanel = set_posture(base, "BP1", panel);
  CHECK(reachable(atpanel, "BP10", panel));
  CHECK_FALSE(reachable(atpanel, "BP11", panel)); // closed table front

  CHECK_THROWS_AS(reachable(seated, "BP99", desk), UnknownSymbol);

  SUBCASE("verdicts survive uniform scaling") {
    for (double k : {0.1, 10.0}) {
      Scene bk = scaled(boxy, k);
      BodyModel mk;
      mk.scale = k;
      auto sk = set_posture(mk, "BP1", bk);
      CHECK_FALSE(reachable(sk, "BP10", bk));
      CHECK(reachable(sk, "BP11", bk));
    }
  }
}

TEST_CASE("seated stability: pedestal chairs topple when weight shifts forward") {
  BodyModel person;
  std::vector<std::string> chair4 = {"Back", "LegF", "LegR", "Seat"};
  std::vector<std::string> pedestal = {"Back", "Base", "Column", "Seat"};

  Scene c4 = scene_of(kChair);
  CHECK(person_chair_stability(c4, chair4, person, "BP1") == ChairStability::Stable);
  CHECK(person_chair_stability(c4, chair4, person, "BP8") == ChairStability::Stable);

  Scene ped = scene_of(kPedestal);
  CHECK(person_chair_stability(ped, pedestal, person, "BP1") == ChairStability::Stable);
  CHECK(person_chair_stability(ped, pedestal, person, "BP8") == ChairStability::Topple);

  SUBCASE("the combined CM matches the hand-computed mass tally") {
    auto seated = set_posture(person, "BP8", ped);
    Scene merged = with_body(ped, seated);
    std::vector<std::string> assembly = pedestal;
    for (auto& id : body_part_ids(seated)) assembly.push_back(id);
    auto v = stability(merged, assembly);
    CHECK(close(v.cm_x, 33.60207, 1e-3)); // (12969 + 154570.9) / 4986
    REQUIRE(v.support.has_value());
    CHECK(close(v.support->lo, 14.5));
    CHECK(close(v.support->hi, 30.5));

    Scene merged4 = with_body(c4, set_posture(person, "BP8", c4));
    std::vector<std::string> a4 = chair4;
    for (auto& id : body_part_ids(seated)) a4.push_back(id);
    auto v4 = stability(merged4, a4);
    CHECK(close(v4.cm_x, 33.06128, 1e-3)); // (14769 + 154570.9) / 5122
    CHECK(close(v4.support->hi, 40));
  }

  SUBCASE("a hand on the table widens the support hull") {
    Scene pd = scene_of(kPedestalDesk);
    std::vector<std::string> chair = {"Back", "Base", "Column", "Seat"};
    CHECK(person_chair_stability(pd, chair, person, "BP7") == ChairStability::Stable);
  }

  SUBCASE("verdicts survive uniform scaling") {
    for (double k : {0.1, 10.0}) {
      BodyModel pk;
      pk.scale = k;
      CHECK(person_chair_stability(scaled(ped, k), pedestal, pk, "BP8") ==
            ChairStability::Topple);
      CHECK(person_chair_stability(scaled(ped, k), pedestal, pk, "BP1") ==
            ChairStability::Stable);
    }
  }

  SUBCASE("the person's segment masses are the documented ones") {
    auto seated = set_posture(person, "BP1", scene_of(kStool));
    double area = 0;
    for (auto& part : body_polygons(seated)) area += part.world().area();
    CHECK(close(area, 3886));

    Scene c = scene_of(kChair);
    Vec2 cm = composite_cm(c, {"Back", "LegF", "LegR", "Seat"});
    CHECK(close(cm.x, 14769.0 / 1236.0)); // hand-tallied area moments
  }
}

TEST_CASE("counterfactual duality: remove the supporter and the load moves") {
  Scene s = two_boxes(40, 10, 10, 10, 15, 10);
  REQUIRE(stability(s, {"Top"}).kind == Stability::Stable);
  Scene cut = s;
  cut.erase("Base");
  auto t = settle(cut);
  REQUIRE(!t.events.empty());
  CHECK(t.events[0].kind == EventKind::FallToGround);
  CHECK(close(t.final.find("Top")->at.y, 0));
}

TEST_CASE("traces serialize to valid state-change chains") {
  Scene s = two_boxes(20, 10, 20, 10, 0, 10);
  s.erase("Base");
  auto t = settle(s);
  REQUIRE(t.events.size() == 1);
  ConceptGraph g = trace_graph(t);
  CHECK(validate(g).errors().empty());
  int changes = 0, pps = 0;
  for (auto& n : g.nodes) {
    if (n.kind == NodeKind::StateChange) changes++;
    if (n.kind == NodeKind::PP && n.label == "Top") pps++;
  }
  CHECK(changes == 1);
  CHECK(pps == 1);

  SUBCASE("multi-event traces are chained in time order") {
    Scene r = rod_prop();
    r.erase("Prop");
    Scene both = r;
    RigidBody extra;
    extra.id = "Puck";
    extra.shape = make_box(5, 5);
    extra.at = {80, 30};
    both.bodies.push_back(extra);
    auto tr = settle(both);
    REQUIRE(tr.events.size() == 2);
    ConceptGraph g2 = trace_graph(tr);
    CHECK(validate(g2).errors().empty());
    int temporal = 0;
    for (auto& l : g2.links) temporal += l.kind == LinkKind::Temporal ? 1 : 0;
    CHECK(temporal == 1);
  }

  SUBCASE("event kinds have stable names") {
    CHECK(event_kind_name(EventKind::FallToGround) == "FallToGround");
    CHECK(event_kind_name(EventKind::RotateFall) == "RotateFall");
    CHECK(event_kind_name(EventKind::StayP) == "StayP");
    CHECK(chair_stability_name(ChairStability::Topple) == "Topple");
  }
}
