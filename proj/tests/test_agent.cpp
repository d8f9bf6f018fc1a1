#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "cdplus/agent.hpp"
#include "cdplus/dsl.hpp"
#include "cdplus/errors.hpp"
#include "cdplus/explain.hpp"
#include "cdplus/graph.hpp"
#include "cdplus/reasoner.hpp"
#include "cdplus/scene.hpp"
#include "cdplus/sexpr.hpp"

using namespace cdp;

namespace {

ConceptGraph graph_of(const std::string& text, const std::string& name) {
  auto forms = read_sexprs(text, "test");
  REQUIRE(forms.size() == 1);
  ConceptGraph g = graph_from_sexpr(forms[0]);
  g.name = name;
  return g;
}

std::vector<FunctionDefinition> kb_of(const std::string& text) {
  SourceDocument doc = parse_document(text, "kb.cdp");
  std::vector<FunctionDefinition> kb;
  for (auto& d : doc.decls)
    if (auto* f = std::get_if<FunctionDefinition>(&d)) kb.push_back(*f);
  return kb;
}

std::string act_label(const ConceptGraph& g) {
  for (auto& n : g.nodes)
    if (n.kind == NodeKind::Act) return n.label;
  return "";
}

ModFlags conc_mods(const ConceptGraph& g) {
  for (auto& l : g.links)
    if (l.kind == LinkKind::Conceptualization) return l.mods;
  return 0;
}

const char* kLookout = R"((scene lookout
  (obj Watcher (rect 4 10) :at (10 0))
  (obj Box (rect 20 20) :at (30 0))
  (obj Fence (rect 2 12) :at (100 0) :fixed)
  (marker Activity (200 8))))";

const char* kSightKb = R"((function see-far
  (fact (cause (c (actor (pp ?p)) (act Look-At) (object (pp ?x)))
               (c (actor (pp ?p)) (act MTRANS) (object (pp ?x))))))
(function vantage
  (fact (enable (c (actor (pp ?p)) (act Climb) (object (pp ?b)))
                (c (actor (pp ?p)) (act Look-At) (object (pp ?x))))))
(function approach
  (fact (enable (c (actor (pp ?p)) (act PTRANS) (dir :to (pp ?b)))
                (c (actor (pp ?p)) (act Climb) (object (pp ?b)))))))";

const char* kSeeGoal = "(c (actor (pp Watcher)) (act MTRANS) (object (pp Activity)))";

const char* kGoKb = R"((function go
  (fact (cause (c (actor (pp ?p)) (act PTRANS) (dir :to (pp ?loc)))
               (c (about (pp ?p)) (state At (value ?loc))))))
(function clear-way
  (fact (enable (c (actor (pp ?p)) (act Open-Door) (object (pp ?d)))
                (c (actor (pp ?p)) (act PTRANS) (dir :to (pp ?loc)))))))";

Scene hall(bool locked) {
  std::string tags = locked ? "(Door Locked)" : "(Door)";
  std::string text = R"((scene hall
  (obj Runner (rect 4 10) :at (10 0))
  (obj Door (rect 4 14) :at (40 0) :tags )" + tags + R"()
  (marker Exit (60 5))))";
  return parse_scene(text);
}

const char* kAtGoal = "(c (about (pp Runner)) (state At (value Exit)))";

} // namespace

/// ---- experiential core -------------------------------------------------------

TEST_CASE("tense names round trip") {
  for (Tense t : {Tense::Past, Tense::Present, Tense::Future, Tense::Hypothetical})
    CHECK(tense_from_string(tense_name(t)) == t);
}

TEST_CASE("episodes land in the region their tense selects") {
  AgentMind mind;
  ConceptGraph g = graph_of("(c (actor (pp Person)) (act PTRANS))", "a-walk");

  int past = mind.assert_episode(g, Tense::Past);
  int now = mind.assert_episode(g, Tense::Present);
  int later = mind.assert_episode(g, Tense::Future);
  int maybe = mind.assert_episode(g, Tense::Hypothetical);

  const Episode* e = mind.expc.find(past);
  REQUIRE(e != nullptr);
  CHECK(e->tense == Tense::Past);
  CHECK(conc_mods(e->graph) & ModPast);

  CHECK(conc_mods(mind.expc.find(later)->graph) & ModFuture);
  CHECK(conc_mods(mind.expc.find(maybe)->graph) & ModConditional);
  CHECK(!(conc_mods(mind.expc.find(now)->graph) &
          (ModPast | ModFuture | ModConditional)));

  auto in = [](const std::vector<const Episode*>& v, int id) {
    for (auto* p : v)
      if (p->id == id) return true;
    return false;
  };
  CHECK(in(mind.expc.retro(), past));
  CHECK(in(mind.expc.present(), now));
  CHECK(in(mind.expc.prospective(), later));
  CHECK(in(mind.expc.prospective(), maybe));
  CHECK(!in(mind.expc.retro(), now));
  CHECK(!in(mind.expc.prospective(), past));

  // every outward assert logs exactly one internal bookkeeping episode
  CHECK(mind.expc.episodes.size() == 8);
  int internals = 0;
  for (auto& ep : mind.expc.episodes) internals += ep.internal ? 1 : 0;
  CHECK(internals == 4);

  // ticks strictly increase in storage order
  for (size_t i = 1; i < mind.expc.episodes.size(); i++)
    CHECK(mind.expc.episodes[i].tick > mind.expc.episodes[i - 1].tick);
}

TEST_CASE("uncertain episodes carry probability and the may-modifier") {
  AgentMind mind;
  ConceptGraph g = graph_of("(c (actor (pp Person)) (act PTRANS))", "a-walk");
  int id = mind.assert_episode(g, Tense::Future, 0.4);
  const Episode* e = mind.expc.find(id);
  CHECK(e->probability == doctest::Approx(0.4));
  CHECK(conc_mods(e->graph) & ModProbable);
}

TEST_CASE("an already tensed graph is not stamped twice") {
  AgentMind mind;
  ConceptGraph g = graph_of("(c :tense p (actor (pp Person)) (act PTRANS))", "done-walk");
  int id = mind.assert_episode(g, Tense::Past);
  CHECK(graphs_equal(mind.expc.find(id)->graph, g));
}

/// ---- motivational core ---------------------------------------------------------

TEST_CASE("primary goals are seeded and wants hang off them") {
  AgentMind mind;
  const GoalNode* comp = mind.motc.find("Competence");
  const GoalNode* safe = mind.motc.find("Safety");
  REQUIRE(comp != nullptr);
  REQUIRE(safe != nullptr);
  CHECK(comp->parent == -1);
  CHECK(safe->parent == -1);

  ConceptGraph goal = graph_of(kAtGoal, "reach-exit");
  size_t eps = mind.expc.episodes.size();
  int id = mind.want("Runner", goal);
  const GoalNode* gn = mind.motc.find(id);
  REQUIRE(gn != nullptr);
  CHECK(gn->name == "reach-exit");
  CHECK(gn->parent == comp->id);
  CHECK(mind.expc.episodes.size() == eps); // wanting is not experiencing

  // the stored rule says achieving the goal pleases the agent
  std::string text = explain(gn->graph);
  CHECK(text.find("Pleased") != std::string::npos);
  CHECK(text.find("Runner") != std::string::npos);
  CHECK(validate(gn->graph).errors().empty());

  CHECK(mind.want("Runner", goal) == id); // idempotent

  ConceptGraph other = graph_of("(c (about (pp Runner)) (state Hidden))", "hide");
  int hid = mind.want("Runner", other, "Safety");
  CHECK(mind.motc.find(hid)->parent == safe->id);

  CHECK_THROWS_AS(mind.want("Runner", other, "WorldPeace"), UnknownSymbol);
}

/// ---- can: deliberation over the planner -----------------------------------------

TEST_CASE("can() answers by planning and logs the deliberation") {
  AgentMind mind;
  size_t n0 = mind.expc.episodes.size();
  CanResult yes = mind.can("Runner", graph_of(kAtGoal, "reach-exit"), hall(false), kb_of(kGoKb));
  CHECK(yes.ok);
  CHECK(yes.outcome.solved);
  CHECK(yes.outcome.steps.size() == 2);

  REQUIRE(mind.expc.episodes.size() == n0 + 4);
  const char* acts[] = {"MBUILD", "MTRANS", "MBUILD", "MTRANS"};
  for (size_t i = 0; i < 4; i++) {
    const Episode& e = mind.expc.episodes[n0 + i];
    CHECK(e.internal);
    CHECK(act_label(e.graph) == acts[i]);
    CHECK(validate(e.graph).errors().empty());
  }

  CanResult no = mind.can("Runner", graph_of(kAtGoal, "reach-exit"), hall(true), kb_of(kGoKb));
  CHECK(!no.ok);
  CHECK(!no.outcome.frontier.empty());
}

/// ---- enablement as counterfactual achievability -----------------------------------

TEST_CASE("a state enables a consequence iff undoing it breaks the plan") {
  AgentMind mind;

  SUBCASE("the only box enables seeing past the fence") {
    Scene s = parse_scene(kLookout);
    CHECK(mind.enable_holds(graph_of("(c (about (pp Box)) (state Present))", "box-there"),
                            graph_of(kSeeGoal, "see"), s, kb_of(kSightKb)));
  }
  SUBCASE("a second box makes the first one dispensable") {
    Scene s = parse_scene(kLookout);
    RigidBody b;
    b.id = "BoxB";
    b.shape = make_box(20, 20);
    b.at = {60, 0};
    s.bodies.push_back(b);
    CHECK(!mind.enable_holds(graph_of("(c (about (pp Box)) (state Present))", "box-there"),
                             graph_of(kSeeGoal, "see"), s, kb_of(kSightKb)));
  }
  SUBCASE("an irrelevant obstacle does not enable anything") {
    Scene s = parse_scene(kLookout);
    CHECK(!mind.enable_holds(graph_of("(c (about (pp Fence)) (state Present))", "fence-there"),
                             graph_of(kSeeGoal, "see"), s, kb_of(kSightKb)));
  }
  SUBCASE("the unlocked door enables reaching the exit") {
    CHECK(mind.enable_holds(graph_of("(c (about (pp Door)) (state Unlocked))", "door-open"),
                            graph_of(kAtGoal, "reach-exit"), hall(false), kb_of(kGoKb)));
  }
}

/// ---- experiments feed the episode log ----------------------------------------------

TEST_CASE("running an experiment commits its protocol as internal episodes") {
  AgentMind mind;
  Scene s;
  s.name = "tower";
  RigidBody base;
  base.id = "Box-B";
  base.shape = make_box(40, 10);
  base.at = {0, 0};
  RigidBody top;
  top.id = "Box-A";
  top.shape = make_box(10, 10);
  top.at = {15, 10};
  s.bodies = {base, top};

  size_t n0 = mind.expc.episodes.size();
  ExperimentResult r = mind.experiment(s, "Box-B");
  CHECK(r.changed);
  REQUIRE(mind.expc.episodes.size() == n0 + 5);
  for (size_t i = 0; i < 5; i++) {
    const Episode& e = mind.expc.episodes[n0 + i];
    CHECK(e.internal);
    CHECK(graphs_equal(e.graph, r.protocol[i]));
  }
}

/// ---- persistence ---------------------------------------------------------------------

TEST_CASE("the stores survive a sexpr round trip field by field") {
  AgentMind mind;
  ConceptGraph g = graph_of("(c (actor (pp Person)) (act PTRANS))", "a-walk");
  mind.assert_episode(g, Tense::Past);
  mind.assert_episode(g, Tense::Hypothetical, 0.25);
  mind.want("Person", graph_of(kAtGoal, "reach-exit"));

  ExperientialCore e2 = expc_from_sexpr(expc_to_sexpr(mind.expc));
  REQUIRE(e2.episodes.size() == mind.expc.episodes.size());
  CHECK(e2.next_id == mind.expc.next_id);
  CHECK(e2.next_tick == mind.expc.next_tick);
  for (size_t i = 0; i < e2.episodes.size(); i++) {
    const Episode& a = mind.expc.episodes[i];
    const Episode& b = e2.episodes[i];
    CHECK(a.id == b.id);
    CHECK(a.tick == b.tick);
    CHECK(a.tense == b.tense);
    CHECK(a.internal == b.internal);
    CHECK(a.probability == doctest::Approx(b.probability));
    CHECK(graphs_equal(a.graph, b.graph));
  }

  MotivationCore m2 = motc_from_sexpr(motc_to_sexpr(mind.motc));
  REQUIRE(m2.goals.size() == mind.motc.goals.size());
  CHECK(m2.next_id == mind.motc.next_id);
  for (size_t i = 0; i < m2.goals.size(); i++) {
    CHECK(m2.goals[i].id == mind.motc.goals[i].id);
    CHECK(m2.goals[i].name == mind.motc.goals[i].name);
    CHECK(m2.goals[i].parent == mind.motc.goals[i].parent);
    CHECK(graphs_equal(m2.goals[i].graph, mind.motc.goals[i].graph));
  }
}

TEST_CASE("session text round trips byte for byte") {
  const char* text = R"((concept greet (c (actor (pp Person)) (act PTRANS)))
(scene spot (obj Rock (rect 4 4) :at (0 0))))";
  Session s = session_from_text(text, "mem.cdp");
  REQUIRE(s.find_concept("greet") != nullptr);
  REQUIRE(s.find_scene("spot") != nullptr);
  CHECK(s.find_scene("missing") == nullptr);

  s.mind.assert_episode(*s.find_concept("greet"), Tense::Past);
  s.mind.want("Person", *s.find_concept("greet"));

  std::string one = s.save_text();
  Session t = session_from_text(one, "mem.cdp");
  CHECK(t.save_text() == one);
  CHECK(t.mind.expc.episodes.size() == s.mind.expc.episodes.size());
  CHECK(t.mind.motc.goals.size() == s.mind.motc.goals.size());
  CHECK(t.mind.motc.find("greet") != nullptr);

  // a fresh mind in a fresh session has no episodes but seeded primaries
  Session fresh = session_from_text(text, "mem.cdp");
  CHECK(fresh.mind.expc.episodes.empty());
  CHECK(fresh.mind.motc.find("Competence") != nullptr);
}

TEST_CASE("session files load back") {
  Session s = session_from_text("(concept nod (c (actor (pp Person)) (act Move)))", "a.cdp");
  s.mind.assert_episode(*s.find_concept("nod"), Tense::Present);
  std::string path = "agent_session_roundtrip.cdp";
  save_session_file(s, path);
  Session t = load_session_file(path);
  CHECK(t.save_text() == s.save_text());
  std::remove(path.c_str());
}
