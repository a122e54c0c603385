#include <doctest.h>

#include <set>

#include "helpers.hpp"

using namespace ssp;
using test_helpers::load;

namespace {

struct Rig {
  NetDocument doc;
  ControlNet cn;
  GuardTable gt;
  Marking mc0;

  explicit Rig(const char* fixture) : doc(load(fixture)) {
    SynthesisOutcome syn = synthesize_pipeline(doc);
    cn = syn.control;
    gt = build_guard_table(doc, cn);
    mc0 = control_marking_from_plant(cn, doc, doc.m0);
  }

  bool guard(const Marking& mc, const char* t) const {
    return guard_true(gt, cn.net, mc, doc.net.trans_id(t));
  }
};

}  // namespace

TEST_CASE("guard_true: initial guards of the two-agent pipeline") {
  Rig rig("pipeline.net");
  CHECK(rig.guard(rig.mc0, "t1"));
  CHECK(rig.guard(rig.mc0, "t5"));
  CHECK(rig.guard(rig.mc0, "t9"));
  // The entry of the b5-consuming round is not enabled: pb_b5 is empty.
  CHECK_FALSE(rig.guard(rig.mc0, "t12"));
}

TEST_CASE("guard_true: an active round opens its interior transitions") {
  Rig rig("pipeline.net");
  SupervisorState st{rig.doc.m0, rig.mc0, {}};
  control_step(rig.doc, rig.cn, rig.gt, st, rig.doc.net.trans_id("t5"), 0);
  REQUIRE(st.trace.size() == 1);
  // pb_b2 is empty, so only the b3-consuming round can open at t5.
  CHECK(st.trace[0].ctrl_trans == rig.cn.sequence_of("x8")->first_ctrl);
  CHECK(st.mc[rig.cn.net.place_id("px_x8")] == 1);
  CHECK(rig.guard(st.mc, "t6"));        // member of the active x8 round
  CHECK_FALSE(rig.guard(st.mc, "t4"));  // member of the inactive x7 round
}

TEST_CASE("control_step: interior transitions leave the control marking alone") {
  Rig rig("pipeline.net");
  SupervisorState st{rig.doc.m0, rig.mc0, {}};
  control_step(rig.doc, rig.cn, rig.gt, st, rig.doc.net.trans_id("t5"), 0);
  Marking before = st.mc;
  control_step(rig.doc, rig.cn, rig.gt, st, rig.doc.net.trans_id("t6"), 0);
  CHECK(st.mc == before);
  CHECK(st.trace[1].ctrl_trans.empty());
  CHECK(st.trace[1].plant_trans == "t6");
  CHECK(st.trace[1].index == 1);
}

TEST_CASE("control_step: refuses guard-false and out-of-range choices") {
  Rig rig("pipeline.net");
  SupervisorState st{rig.doc.m0, rig.mc0, {}};
  CHECK_THROWS_AS(
      control_step(rig.doc, rig.cn, rig.gt, st, rig.doc.net.trans_id("t12"), 0),
      NetError);
  CHECK_THROWS_AS(
      control_step(rig.doc, rig.cn, rig.gt, st, rig.doc.net.trans_id("t1"), 9),
      NetError);
  CHECK(st.trace.empty());
}

TEST_CASE("guard_true: transition with no label and no round membership") {
  NetDocument doc = load("pipeline.net");
  ControlNet empty;  // no control structure at all
  GuardTable gt = build_guard_table(doc, empty);
  Marking none;
  for (int t = 0; t < doc.net.n_trans(); ++t)
    CHECK_FALSE(guard_true(gt, empty.net, none, t));
}

TEST_CASE("run: scripted replay of the deadlock sequence is blocked") {
  Rig rig("three_agent.net");
  RunResult res =
      run(rig.doc, rig.cn, rig.mc0, Policy::Scripted, 0, 0,
          {"t3", "t4", "t5", "t6", "t3", "t5", "t9"});
  CHECK(res.verdict == "blocked");
  // The supervisor allows the first four steps and refuses the second t3:
  // entering that round again would drain b2 below a full-round refill.
  CHECK(res.blocked_index == 4);
  CHECK(res.state.trace.size() == 4);
}

TEST_CASE("run: seeded replays are deterministic") {
  Rig rig("pipeline.net");
  RunResult a = run(rig.doc, rig.cn, rig.mc0, Policy::Random, 42, 60, {});
  RunResult b = run(rig.doc, rig.cn, rig.mc0, Policy::Random, 42, 60, {});
  CHECK(a.verdict == "completed");
  REQUIRE(a.state.trace.size() == 60);
  REQUIRE(b.state.trace.size() == 60);
  for (std::size_t i = 0; i < 60; ++i) {
    CHECK(a.state.trace[i].plant_trans == b.state.trace[i].plant_trans);
    CHECK(a.state.trace[i].ctrl_trans == b.state.trace[i].ctrl_trans);
  }
  CHECK(a.state.ms == b.state.ms);
  CHECK(a.state.mc == b.state.mc);
}

TEST_CASE("run: zero steps returns the initial state") {
  Rig rig("pipeline.net");
  RunResult res = run(rig.doc, rig.cn, rig.mc0, Policy::Random, 7, 0, {});
  CHECK(res.verdict == "completed");
  CHECK(res.state.trace.empty());
  CHECK(res.state.ms == rig.doc.m0);
  CHECK(res.state.mc == rig.mc0);
}

TEST_CASE("run: liveness hypothesis is checked before any step") {
  Rig rig("pipeline.net");
  Marking dead_mc(rig.cn.net.n_places(), 0);
  CHECK_THROWS_WITH_AS(
      run(rig.doc, rig.cn, dead_mc, Policy::Random, 0, 10, {}),
      doctest::Contains("hypothesis"), NetError);
}

TEST_CASE("run: exhaustive joint census of the supervised plants") {
  Rig rig("pipeline.net");
  RunResult res = run(rig.doc, rig.cn, rig.mc0, Policy::Exhaustive, 0, 0, {});
  CHECK(res.exhaustive);
  CHECK(res.census.reachable == 94);
  CHECK(res.census.deadlock == 0);
  CHECK(res.census.livelock == 0);
  CHECK(res.census.livelock_any_dead == 0);
}

TEST_CASE("compose: labeled plant transitions split per control transition") {
  NetDocument doc = load("pipeline.net");
  SynthesisOutcome syn = synthesize_pipeline(doc);
  NetDocument composed = compose(doc, syn.control);
  std::set<std::string> trans(composed.net.transitions.begin(),
                              composed.net.transitions.end());
  // t1 opens either the x4 or the x5 round; t5 either x7 or x8.
  CHECK(trans.count("t1_x4"));
  CHECK(trans.count("t1_x5"));
  CHECK(trans.count("t5_x7"));
  CHECK(trans.count("t5_x8"));
  // Single-round transitions keep their plant names.
  CHECK(trans.count("t2"));
  CHECK(trans.count("t4"));
  CHECK(trans.count("t6"));
  // Buffers are identified with their control counterparts: one copy, plant
  // name, control-side arc structure.
  CHECK(composed.net.place_id("b1") >= 0);
  CHECK(composed.net.place_id("pb_b1") < 0);
  CHECK(composed.net.place_id("px_x7") >= 0);
  // Interior transitions self-loop on their round place.
  int t4 = composed.net.trans_id("t4");
  int px7 = composed.net.place_id("px_x7");
  CHECK(composed.net.pre[px7][t4] == 1);
  CHECK(composed.net.post[px7][t4] == 1);
}

TEST_CASE("compose: reachability equals the expected supervised count") {
  NetDocument doc = load("pipeline.net");
  SynthesisOutcome syn = synthesize_pipeline(doc);
  NetDocument composed = compose(doc, syn.control);
  Census c = classify_markings(reachability_graph(composed.net, composed.m0));
  CHECK(c.reachable == 94);
  CHECK(c.livelock == 0);
  CHECK(c.deadlock == 0);
}

TEST_CASE("compose: census agrees with the exhaustive joint run on all plants") {
  for (const char* f : {"three_agent.net", "pipeline.net", "weighted.net"}) {
    NetDocument doc = load(f);
    SynthesisOutcome syn = synthesize_pipeline(doc);
    Marking mc0 = control_marking_from_plant(syn.control, doc, doc.m0);
    RunResult joint =
        run(doc, syn.control, mc0, Policy::Exhaustive, 0, 0, {});
    NetDocument composed = compose(doc, syn.control);
    Census c = classify_markings(reachability_graph(composed.net, composed.m0));
    CHECK(c.reachable == joint.census.reachable);
    CHECK(c.deadlock == joint.census.deadlock);
    CHECK(c.livelock == joint.census.livelock);
  }
}

TEST_CASE("compose: supervised regression goldens for the other two plants") {
  NetDocument f2 = load("three_agent.net");
  NetDocument c2 = compose(f2, synthesize_pipeline(f2).control);
  Census a = classify_markings(reachability_graph(c2.net, c2.m0));
  CHECK(a.reachable == 100);
  CHECK(a.livelock == 0);

  NetDocument f4 = load("weighted.net");
  NetDocument c4 = compose(f4, synthesize_pipeline(f4).control);
  Census b = classify_markings(reachability_graph(c4.net, c4.m0));
  CHECK(b.reachable == 9);
  CHECK(b.livelock == 0);
}

TEST_CASE("compose: empty control structure returns the plant") {
  NetDocument doc = load("pipeline.net");
  ControlNet none;
  NetDocument composed = compose(doc, none);
  CHECK(composed.net.places == doc.net.places);
  CHECK(composed.net.transitions == doc.net.transitions);
  CHECK(composed.net.pre == doc.net.pre);
  CHECK(composed.net.post == doc.net.post);
  CHECK(composed.m0 == doc.m0);
}
