#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace ssp;
using test_helpers::circuit;
using test_helpers::load;

TEST_CASE("enabled: initial marking of the two-agent plant") {
  NetDocument doc = load("pipeline.net");
  std::vector<int> en = enabled(doc.net, doc.m0);
  std::vector<std::string> names;
  for (int t : en) names.push_back(doc.net.transitions[t]);
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"t1", "t12", "t5", "t9"});
}

TEST_CASE("enabled: zero marking enables nothing when all presets nonempty") {
  NetDocument doc = load("pipeline.net");
  Marking zero(doc.net.n_places(), 0);
  CHECK(enabled(doc.net, zero).empty());
}

TEST_CASE("enabled: three-agent plant deadlock marking enables nothing") {
  NetDocument doc = load("three_agent.net");
  Marking dead = make_marking(doc.net, {{"p3", 1},
                                        {"p5", 1},
                                        {"p8", 1},
                                        {"b1", 1},
                                        {"b4", 1},
                                        {"b6", 1},
                                        {"b7", 1}});
  CHECK(enabled(doc.net, dead).empty());
}

TEST_CASE("enabled: dimension mismatch is a structural error") {
  NetDocument doc = load("pipeline.net");
  Marking bad(doc.net.n_places() + 1, 0);
  CHECK_THROWS_AS(enabled(doc.net, bad), NetError);
}

TEST_CASE("fire: token moves of a single firing") {
  NetDocument doc = load("pipeline.net");
  Marking m1 = fire(doc.net, doc.m0, doc.net.trans_id("t1"));
  CHECK(m1[doc.net.place_id("p1")] == 0);
  CHECK(m1[doc.net.place_id("p2")] == 1);
  // b1 is consumed by the cycle-closing transitions, not by t1.
  CHECK(m1[doc.net.place_id("b1")] == 1);
  CHECK(doc.m0[doc.net.place_id("p1")] == 1);  // input marking untouched
}

TEST_CASE("fire: self-loop transition leaves the marking unchanged") {
  Net net;
  net.add_place("p");
  net.add_trans("t");
  net.add_arc("p", "t");
  net.add_arc("t", "p");
  Marking m = {3};
  CHECK(fire(net, m, 0) == m);
}

TEST_CASE("fire: disabled transition reports the deficient place") {
  NetDocument doc = load("pipeline.net");
  CHECK_THROWS_WITH_AS(fire(doc.net, doc.m0, doc.net.trans_id("t2")),
                       doctest::Contains("p2"), NetError);
}

TEST_CASE("fire_sequence: two-step sequence moves a buffer token") {
  NetDocument doc = load("pipeline.net");
  Marking m1 = fire_sequence(doc.net, doc.m0, std::vector<std::string>{"t1", "t8"});
  Marking want = make_marking(doc.net, {{"p1", 1}, {"p4", 1}, {"b3", 2}, {"b4", 1}});
  CHECK(m1 == want);
}

TEST_CASE("fire_sequence: seven-step run into the known deadlock") {
  NetDocument doc = load("three_agent.net");
  Marking m = fire_sequence(
      doc.net, doc.m0,
      std::vector<std::string>{"t3", "t4", "t5", "t6", "t3", "t5", "t9"});
  Marking want = make_marking(doc.net, {{"p3", 1},
                                        {"p5", 1},
                                        {"p8", 1},
                                        {"b1", 1},
                                        {"b4", 1},
                                        {"b6", 1},
                                        {"b7", 1}});
  CHECK(m == want);
  CHECK(enabled(doc.net, m).empty());
}

TEST_CASE("fire_sequence: empty sequence is the identity") {
  NetDocument doc = load("three_agent.net");
  CHECK(fire_sequence(doc.net, doc.m0, std::vector<int>{}) == doc.m0);
}

TEST_CASE("fire_sequence: first disabled step is reported with its index") {
  NetDocument doc = load("pipeline.net");
  // t1 and t2 complete an N1 round; t3 needs N2 past its waiting place.
  CHECK_THROWS_WITH_AS(
      fire_sequence(doc.net, doc.m0, std::vector<std::string>{"t1", "t2", "t3"}),
      doctest::Contains("step 2 (t3)"), NetError);
}

TEST_CASE("reachability_graph: plant fixture sizes") {
  NetDocument doc = load("pipeline.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  CHECK(rg.nodes.size() == 180);
  CHECK_FALSE(rg.truncated);
  CHECK(rg.node_of(doc.m0) == rg.root);
}

TEST_CASE("reachability_graph: one-place self-loop is a fixed point") {
  Net net;
  net.add_place("p");
  net.add_trans("t");
  net.add_arc("p", "t");
  net.add_arc("t", "p");
  ReachGraph rg = reachability_graph(net, {1});
  CHECK(rg.nodes.size() == 1);
  CHECK(rg.edges.size() == 1);
}

TEST_CASE("reachability_graph: budget exhaustion sets truncated and census refuses") {
  NetDocument doc = load("pipeline.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0, 10);
  CHECK(rg.truncated);
  CHECK_THROWS_AS(classify_markings(rg), TruncationError);
  CHECK_THROWS_AS(dead_transitions(rg, rg.root), TruncationError);
  CHECK_THROWS_AS(is_live(doc.net, doc.m0, 10), TruncationError);
}

TEST_CASE("reachability_graph: every edge satisfies the firing rule") {
  NetDocument doc = load("weighted.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  for (const Edge& e : rg.edges) {
    const Marking& src = rg.nodes[e.src];
    const Marking& dst = rg.nodes[e.dst];
    for (int p = 0; p < doc.net.n_places(); ++p) {
      CHECK(src[p] >= doc.net.pre[p][e.trans]);
      CHECK(dst[p] == src[p] + doc.net.flow(p, e.trans));
    }
  }
}

TEST_CASE("reachability_graph: determinism across repeated runs") {
  NetDocument doc = load("three_agent.net");
  ReachGraph a = reachability_graph(doc.net, doc.m0);
  ReachGraph b = reachability_graph(doc.net, doc.m0);
  CHECK(a.nodes == b.nodes);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].src == b.edges[i].src);
    CHECK(a.edges[i].trans == b.edges[i].trans);
    CHECK(a.edges[i].dst == b.edges[i].dst);
  }
}

TEST_CASE("dead_transitions: all transitions dead at a total deadlock") {
  NetDocument doc = load("three_agent.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  Marking dead = fire_sequence(
      doc.net, doc.m0,
      std::vector<std::string>{"t3", "t4", "t5", "t6", "t3", "t5", "t9"});
  CHECK(dead_transitions(rg, dead).size() == 14);
}

TEST_CASE("dead_transitions: live state machine has none anywhere") {
  NetDocument doc = circuit(4);
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  for (std::size_t n = 0; n < rg.nodes.size(); ++n)
    CHECK(dead_transitions(rg, (int)n).empty());
}

TEST_CASE("dead_transitions: livelock markings of the plant have dead transitions") {
  NetDocument doc = load("pipeline.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  std::size_t with_dead = 0;
  for (std::size_t n = 0; n < rg.nodes.size(); ++n)
    if (!dead_transitions(rg, (int)n).empty()) ++with_dead;
  // Matches the census under the "some transition dead" reading.
  CHECK(with_dead == 20);
}

TEST_CASE("classify_markings: plant census and both livelock readings") {
  NetDocument doc = load("pipeline.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  Census c = classify_markings(rg);
  CHECK(c.reachable == 180);
  CHECK(c.deadlock == 13);
  CHECK(c.livelock == 13);  // terminal-SCC reading, the recorded definition
  CHECK(c.livelock_any_dead == 20);
  CHECK(std::string(Census::livelock_definition()) == "terminal-scc");
}

TEST_CASE("classify_markings: live net has zero deadlock and livelock") {
  NetDocument doc = circuit(5);
  Census c = classify_markings(reachability_graph(doc.net, doc.m0));
  CHECK(c.reachable == 5);
  CHECK(c.deadlock == 0);
  CHECK(c.livelock == 0);
  CHECK(c.livelock_any_dead == 0);
}

TEST_CASE("classify_markings: deadlocks are a subcase of both livelock readings") {
  for (const char* f : {"pipeline.net", "three_agent.net", "weighted.net"}) {
    NetDocument doc = load(f);
    Census c = classify_markings(reachability_graph(doc.net, doc.m0));
    CHECK(c.deadlock <= c.livelock);
    CHECK(c.livelock <= c.livelock_any_dead);
    CHECK((c.livelock == 0) == (c.livelock_any_dead == 0));
  }
}

TEST_CASE("is_live: non-live plants and a live state machine") {
  NetDocument three_agent = load("three_agent.net");
  CHECK_FALSE(is_live(three_agent.net, three_agent.m0));
  NetDocument sm = circuit(3);
  CHECK(is_live(sm.net, sm.m0));
}

TEST_CASE("is_implicit_place: place with no output transitions") {
  Net net;
  net.add_place("p");
  net.add_place("sink");
  net.add_trans("t");
  net.add_arc("p", "t");
  net.add_arc("t", "sink");
  CHECK(is_implicit_place(net, {1, 0}, net.place_id("sink")));
  CHECK_FALSE(is_implicit_place(net, {1, 0}, net.place_id("p")));
}

TEST_CASE("is_implicit_place: hub place becomes implicit after enforcement") {
  NetDocument doc = load("weighted_subnet.net");
  std::vector<Semiflow> xs = minimal_t_semiflows(doc.net);
  EnforcementResult res = enforce_liveness(doc.net, find_check_transitions(doc.net, xs));
  int p1 = res.enforced.place_id("p1");
  REQUIRE(p1 >= 0);
  CHECK(is_implicit_place(res.enforced, res.m0, p1));
}

TEST_CASE("place_bounds: state machine and buffer bounds") {
  NetDocument sm = circuit(4);
  for (const auto& [p, b] : place_bounds(reachability_graph(sm.net, sm.m0)))
    CHECK(b == 1);

  NetDocument doc = load("pipeline.net");
  auto bounds = place_bounds(reachability_graph(doc.net, doc.m0));
  CHECK(bounds.at("b3") >= 2);  // witnessed by firing t1 t8
  CHECK(bounds.at("p1") == 1);
}

TEST_CASE("place_bounds: source-free self-loop place keeps its tokens") {
  Net net;
  net.add_place("p");
  net.add_trans("t");
  net.add_arc("p", "t");
  net.add_arc("t", "p");
  auto bounds = place_bounds(reachability_graph(net, {7}));
  CHECK(bounds.at("p") == 7);
}

TEST_CASE("make_marking: unlisted places default to zero, unknown ids rejected") {
  NetDocument doc = load("weighted.net");
  Marking m = make_marking(doc.net, {{"p1", 2}});
  CHECK(m[doc.net.place_id("p1")] == 2);
  CHECK(m[doc.net.place_id("b1")] == 0);
  CHECK_THROWS_AS(make_marking(doc.net, {{"nope", 1}}), NetError);
}
