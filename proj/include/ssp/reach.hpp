#pragma once

#include <cstddef>
#include <map>
#include <set>

#include "ssp/net.hpp"

namespace ssp {

struct Edge {
  int src;
  int trans;
  int dst;
};

struct ReachGraph {
  const Net* net = nullptr;
  std::vector<Marking> nodes;
  std::vector<Edge> edges;
  int root = 0;
  bool truncated = false;
  std::map<Marking, int> index;

  int node_of(const Marking& m) const;  // -1 when absent
  void require_exhaustive(const char* op) const;
};

inline constexpr std::size_t kDefaultNodeBudget = 1000000;

// Breadth-first closure of the firing relation; deterministic (FIFO order,
// transitions in index order). truncated is set instead of failing when the
// budget is hit; census-style consumers refuse truncated graphs.
ReachGraph reachability_graph(const Net& net, const Marking& m0,
                              std::size_t node_budget = kDefaultNodeBudget);

// Transitions that can never fire again from m (searching within rg).
std::set<int> dead_transitions(const ReachGraph& rg, const Marking& m);
std::set<int> dead_transitions(const ReachGraph& rg, int node);

struct Census {
  std::size_t reachable = 0;
  std::size_t deadlock = 0;
  // Livelock under the recorded definition: markings inside terminal strongly
  // connected components in which some transition never fires. This is the
  // definition under which the reference two-agent pipeline counts 13;
  // the alternative reading is reported alongside.
  std::size_t livelock = 0;
  // Alternative definition: markings at which at least one transition is dead.
  std::size_t livelock_any_dead = 0;

  static const char* livelock_definition() { return "terminal-scc"; }
};

Census classify_markings(const ReachGraph& rg);

// Census over an externally built transition system (used for joint
// plant/control exploration). n_trans is the label alphabet size.
Census classify_graph(std::size_t n_nodes, const std::vector<Edge>& edges,
                      int n_trans);

bool is_live(const Net& net, const Marking& m0,
             std::size_t node_budget = kDefaultNodeBudget);

// Behavioral implicitness: p never constrains a firing in isolation, i.e. at
// every reachable marking, whenever all other input places of some t in p•
// are sufficiently marked, so is p.
bool is_implicit_place(const Net& net, const Marking& m0, int p,
                       std::size_t node_budget = kDefaultNodeBudget);

std::map<std::string, long long> place_bounds(const ReachGraph& rg);

// Strongly connected components (iterative Tarjan); returns component index
// per node, components numbered in reverse topological order.
std::vector<int> scc_components(std::size_t n_nodes,
                                const std::vector<Edge>& edges,
                                int* n_components);

}  // namespace ssp
