#include "ssp/reach.hpp"

#include <algorithm>
#include <deque>

namespace ssp {

int ReachGraph::node_of(const Marking& m) const {
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

void ReachGraph::require_exhaustive(const char* op) const {
  if (truncated)
    throw TruncationError(std::string(op) +
                          ": reachability graph truncated at node budget; "
                          "exact result refused");
}

ReachGraph reachability_graph(const Net& net, const Marking& m0,
                              std::size_t node_budget) {
  if (node_budget < 1) throw NetError("node budget must be at least 1");
  if ((int)m0.size() != net.n_places())
    throw NetError("marking size does not match net place count");
  ReachGraph rg;
  rg.net = &net;
  rg.nodes.push_back(m0);
  rg.index[m0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    Marking m = rg.nodes[v];
    for (int t = 0; t < net.n_trans(); ++t) {
      if (!is_enabled(net, m, t)) continue;
      Marking next = m;
      for (int p = 0; p < net.n_places(); ++p)
        next[p] += net.post[p][t] - net.pre[p][t];
      auto it = rg.index.find(next);
      int w;
      if (it != rg.index.end()) {
        w = it->second;
      } else {
        if (rg.nodes.size() >= node_budget) {
          rg.truncated = true;
          return rg;
        }
        w = (int)rg.nodes.size();
        rg.nodes.push_back(next);
        rg.index[next] = w;
        queue.push_back(w);
      }
      rg.edges.push_back({v, t, w});
    }
  }
  return rg;
}

std::vector<int> scc_components(std::size_t n_nodes,
                                const std::vector<Edge>& edges,
                                int* n_components) {
  std::vector<std::vector<int>> adj(n_nodes);
  for (const auto& e : edges) adj[e.src].push_back(e.dst);

  // Iterative Tarjan.
  std::vector<int> comp(n_nodes, -1), low(n_nodes, 0), num(n_nodes, -1);
  std::vector<int> stack;
  std::vector<char> on_stack(n_nodes, 0);
  int counter = 0, ncomp = 0;
  struct Frame {
    int v;
    std::size_t child;
  };
  for (std::size_t start = 0; start < n_nodes; ++start) {
    if (num[start] != -1) continue;
    std::vector<Frame> call{{(int)start, 0}};
    while (!call.empty()) {
      Frame& f = call.back();
      int v = f.v;
      if (f.child == 0) {
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (f.child < adj[v].size()) {
        int w = adj[v][f.child++];
        if (num[w] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], num[w]);
      }
      if (descended) continue;
      if (low[v] == num[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  if (n_components) *n_components = ncomp;
  return comp;
}

namespace {

// Per node: bitset of transitions fireable somewhere in the node's forward
// closure, computed on the SCC condensation. Returns (comp assignment,
// fireable-per-comp, fireable-within-comp, terminal-per-comp).
struct FireabilityInfo {
  std::vector<int> comp;
  int ncomp = 0;
  std::vector<std::vector<char>> reach_fire;  // [comp][t]
  std::vector<std::vector<char>> own_fire;    // [comp][t]
  std::vector<char> terminal;                 // [comp]
};

FireabilityInfo fireability(std::size_t n_nodes, const std::vector<Edge>& edges,
                            int n_trans) {
  FireabilityInfo fi;
  fi.comp = scc_components(n_nodes, edges, &fi.ncomp);
  fi.own_fire.assign(fi.ncomp, std::vector<char>(n_trans, 0));
  fi.reach_fire.assign(fi.ncomp, std::vector<char>(n_trans, 0));
  fi.terminal.assign(fi.ncomp, 1);
  std::vector<std::vector<int>> succ(fi.ncomp);
  for (const auto& e : edges) {
    int a = fi.comp[e.src], b = fi.comp[e.dst];
    if (a == b) {
      fi.own_fire[a][e.trans] = 1;
    } else {
      // An edge leaving the SCC: its transition fires from inside a, and a
      // is not terminal. Tarjan numbers components in reverse topological
      // order, so b < a here.
      succ[a].push_back(b);
      fi.terminal[a] = 0;
    }
    fi.reach_fire[a][e.trans] = 1;
  }
  for (int c = 0; c < fi.ncomp; ++c)
    for (int s : succ[c])
      for (int t = 0; t < n_trans; ++t)
        if (fi.reach_fire[s][t]) fi.reach_fire[c][t] = 1;
  return fi;
}

}  // namespace

Census classify_graph(std::size_t n_nodes, const std::vector<Edge>& edges,
                      int n_trans) {
  Census c;
  c.reachable = n_nodes;
  std::vector<char> has_out(n_nodes, 0);
  for (const auto& e : edges) has_out[e.src] = 1;
  FireabilityInfo fi = fireability(n_nodes, edges, n_trans);
  std::vector<char> comp_all_own(fi.ncomp, 1), comp_all_reach(fi.ncomp, 1);
  for (int k = 0; k < fi.ncomp; ++k)
    for (int t = 0; t < n_trans; ++t) {
      if (!fi.own_fire[k][t]) comp_all_own[k] = 0;
      if (!fi.reach_fire[k][t]) comp_all_reach[k] = 0;
    }
  for (std::size_t v = 0; v < n_nodes; ++v) {
    int k = fi.comp[v];
    if (!has_out[v]) ++c.deadlock;
    if (fi.terminal[k] && !comp_all_own[k]) ++c.livelock;
    if (!comp_all_reach[k]) ++c.livelock_any_dead;
  }
  return c;
}

Census classify_markings(const ReachGraph& rg) {
  rg.require_exhaustive("classify_markings");
  return classify_graph(rg.nodes.size(), rg.edges, rg.net->n_trans());
}

std::set<int> dead_transitions(const ReachGraph& rg, int node) {
  rg.require_exhaustive("dead_transitions");
  if (node < 0 || node >= (int)rg.nodes.size())
    throw NetError("dead_transitions: node out of range");
  FireabilityInfo fi =
      fireability(rg.nodes.size(), rg.edges, rg.net->n_trans());
  std::set<int> out;
  for (int t = 0; t < rg.net->n_trans(); ++t)
    if (!fi.reach_fire[fi.comp[node]][t]) out.insert(t);
  return out;
}

std::set<int> dead_transitions(const ReachGraph& rg, const Marking& m) {
  int node = rg.node_of(m);
  if (node < 0) throw NetError("dead_transitions: marking is not a node");
  return dead_transitions(rg, node);
}

bool is_live(const Net& net, const Marking& m0, std::size_t node_budget) {
  ReachGraph rg = reachability_graph(net, m0, node_budget);
  rg.require_exhaustive("is_live");
  Census c = classify_markings(rg);
  return c.livelock == 0 && c.livelock_any_dead == 0;
}

bool is_implicit_place(const Net& net, const Marking& m0, int p,
                       std::size_t node_budget) {
  if (p < 0 || p >= net.n_places()) throw NetError("unknown place index");
  ReachGraph rg = reachability_graph(net, m0, node_budget);
  rg.require_exhaustive("is_implicit_place");
  std::vector<int> outs = net.out_trans(p);
  for (const Marking& m : rg.nodes) {
    for (int t : outs) {
      bool others_ok = true;
      for (int q = 0; q < net.n_places() && others_ok; ++q)
        if (q != p && m[q] < net.pre[q][t]) others_ok = false;
      if (others_ok && m[p] < net.pre[p][t]) return false;
    }
  }
  return true;
}

std::map<std::string, long long> place_bounds(const ReachGraph& rg) {
  rg.require_exhaustive("place_bounds");
  std::map<std::string, long long> out;
  for (int p = 0; p < rg.net->n_places(); ++p) {
    long long mx = 0;
    for (const Marking& m : rg.nodes) mx = std::max(mx, m[p]);
    out[rg.net->places[p]] = mx;
  }
  return out;
}

}  // namespace ssp
