#include <doctest.h>

#include "helpers.hpp"

using namespace ssp;
using test_helpers::load;

namespace {

bool same_net(const Net& a, const Net& b) {
  return a.places == b.places && a.transitions == b.transitions &&
         a.pre == b.pre && a.post == b.post && a.labels == b.labels;
}

}  // namespace

TEST_CASE("parse_net: three-agent plant has 19 places and 14 transitions") {
  NetDocument doc = load("three_agent.net");
  CHECK(doc.net.n_places() == 19);
  CHECK(doc.net.n_trans() == 14);
  REQUIRE(doc.decomposition.has_value());
  CHECK(doc.decomposition->agents.size() == 3);
  CHECK(doc.decomposition->buffers.size() == 8);
  CHECK(doc.decomposition->agents[0].wait == "p1");
  CHECK(doc.decomposition->agent_of_place("p8") == 2);
  CHECK(doc.decomposition->agent_of_trans("t6") == 1);
  CHECK(doc.decomposition->is_buffer("b5"));
  CHECK_FALSE(doc.decomposition->is_buffer("p5"));
}

TEST_CASE("parse_net: arc weight 2 lands in the incidence matrix") {
  NetDocument doc = load("weighted.net");
  CHECK(doc.net.post[doc.net.place_id("b1")][doc.net.trans_id("t6")] == 2);
  CHECK(doc.net.pre[doc.net.place_id("b1")][doc.net.trans_id("t2")] == 1);
  CHECK_FALSE(doc.net.is_ordinary());
}

TEST_CASE("parse_net: labels and markings") {
  NetDocument doc = parse_net(
      "NET demo\nPLACE p MARKING 3\nTRANS t LABEL fire\nARC p -> t\n");
  CHECK(doc.m0 == Marking{3});
  CHECK(doc.net.labels.at("t") == "fire");
  CHECK_FALSE(doc.decomposition.has_value());
}

TEST_CASE("parse_net: error cases carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_net("NET x\nFROB p\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_net("NET x\nTRANS t\nARC p -> t\n"),
                       doctest::Contains("undeclared"), ParseError);
  CHECK_THROWS_WITH_AS(parse_net("NET x\nPLACE p\nPLACE p\n"),
                       doctest::Contains("duplicate"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_net("NET x\nPLACE p\nTRANS t\nARC p -> t WEIGHT -1\n"),
      doctest::Contains("natural"), ParseError);
  CHECK_THROWS_WITH_AS(parse_net("NET x\nPLACE p MARKING -2\n"),
                       doctest::Contains("natural"), ParseError);
  CHECK_THROWS_AS(parse_net("NET x\nARC a -> b ->\n"), ParseError);
}

TEST_CASE("serialize_net: round-trip identity over the corpus") {
  for (const char* f :
       {"three_agent.net", "pipeline.net", "weighted.net", "weighted_subnet.net"}) {
    NetDocument doc = load(f);
    NetDocument back = parse_net(serialize_net(doc));
    CHECK(same_net(doc.net, back.net));
    CHECK(doc.m0 == back.m0);
    CHECK(doc.name == back.name);
    CHECK(doc.decomposition.has_value() == back.decomposition.has_value());
    if (doc.decomposition) {
      CHECK(doc.decomposition->buffers == back.decomposition->buffers);
      REQUIRE(doc.decomposition->agents.size() ==
              back.decomposition->agents.size());
      for (std::size_t i = 0; i < doc.decomposition->agents.size(); ++i) {
        CHECK(doc.decomposition->agents[i].places ==
              back.decomposition->agents[i].places);
        CHECK(doc.decomposition->agents[i].wait ==
              back.decomposition->agents[i].wait);
      }
    }
  }
}

TEST_CASE("serialize_net: labels and weights survive the round trip") {
  NetDocument doc = load("pipeline.net");
  ControlNet cn = build_control_pn(doc);
  NetDocument cdoc;
  cdoc.name = "ctrl";
  cdoc.net = cn.net;
  cdoc.m0 = cn.m0;
  NetDocument back = parse_net(serialize_net(cdoc));
  CHECK(same_net(cdoc.net, back.net));
  CHECK(back.net.labels.at("tx7_first") == "t5");

  NetDocument w = load("weighted.net");
  NetDocument wback = parse_net(serialize_net(w));
  CHECK(wback.net.post[wback.net.place_id("b1")][wback.net.trans_id("t6")] == 2);
}

TEST_CASE("export_dot: net rendering is deterministic and complete") {
  NetDocument doc = load("weighted.net");
  std::string dot = export_dot(doc.net);
  CHECK(dot == export_dot(doc.net));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"b1\"") != std::string::npos);
  CHECK(dot.find("\"t6\" -> \"b1\" [label=\"2\"]") != std::string::npos);

  Net empty;
  std::string edot = export_dot(empty);
  CHECK(edot == "digraph net {\n}\n");
}

TEST_CASE("export_dot: simplified control net shows two isolated subnets") {
  NetDocument doc = load("pipeline.net");
  SimplifiedControlNet scn = simplify_control_pn(build_control_pn(doc));
  CHECK(scn.n_components == 2);
  std::string dot = export_dot(scn.net);
  // Every simplified place and transition appears in the rendering.
  for (const auto& p : scn.net.places)
    CHECK(dot.find("\"" + p + "\"") != std::string::npos);
  for (const auto& t : scn.net.transitions)
    CHECK(dot.find("\"" + t + "\"") != std::string::npos);
}

TEST_CASE("export_dot: reachability graph node count") {
  NetDocument doc = load("pipeline.net");
  ReachGraph rg = reachability_graph(doc.net, doc.m0);
  std::string dot = export_dot(rg);
  std::size_t nodes = 0;
  for (std::size_t pos = dot.find("[label=\""); pos != std::string::npos;
       pos = dot.find("[label=\"", pos + 1))
    ++nodes;
  CHECK(nodes == 180 + rg.edges.size());  // one label per node and per edge
}

TEST_CASE("report: key = value lines under section headers, stable order") {
  Report r;
  r.add("plant", "reachable", 180);
  r.add("plant", "livelock", 13);
  r.add("composed", "reachable", 94);
  CHECK(r.str() ==
        "[plant]\nreachable = 180\nlivelock = 13\n[composed]\nreachable = 94\n");
}

TEST_CASE("report: census rows record the livelock definition used") {
  NetDocument doc = load("pipeline.net");
  PipelineCensus pc = full_pipeline_census(doc);
  std::string text = pipeline_report(doc, pc).str();
  CHECK(text.find("reachable = 180") != std::string::npos);
  CHECK(text.find("livelock = 13") != std::string::npos);
  CHECK(text.find("livelock_definition = terminal-scc") != std::string::npos);
  CHECK(text.find("reachable = 94") != std::string::npos);
}
