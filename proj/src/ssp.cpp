#include "ssp/ssp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ssp {

bool SspValidationReport::all_ok() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionVerdict& c) { return c.ok; });
}

Net agent_subnet(const Net& net, const AgentDecl& agent) {
  Net sub;
  for (const auto& p : agent.places) sub.add_place(p);
  for (const auto& t : agent.transitions) sub.add_trans(t);
  for (const auto& p : agent.places)
    for (const auto& t : agent.transitions) {
      int pp = net.place_id(p), tt = net.trans_id(t);
      int sp = sub.place_id(p), st = sub.trans_id(t);
      sub.pre[sp][st] = net.pre[pp][tt];
      sub.post[sp][st] = net.post[pp][tt];
    }
  return sub;
}

std::vector<Semiflow> local_t_semiflows(const Net& net,
                                        const AgentDecl& agent) {
  return minimal_t_semiflows(agent_subnet(net, agent));
}

std::pair<std::string, std::string> first_last_transitions(
    const Net& net, const AgentDecl& agent, const Semiflow& x) {
  int pe = net.place_id(agent.wait);
  if (pe < 0) throw NetError("unknown waiting place " + agent.wait);
  std::vector<std::string> firsts, lasts;
  for (std::size_t i = 0; i < agent.transitions.size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    int t = net.trans_id(agent.transitions[i]);
    if (net.pre[pe][t] > 0) firsts.push_back(agent.transitions[i]);
    if (net.post[pe][t] > 0) lasts.push_back(agent.transitions[i]);
  }
  if (firsts.size() != 1 || lasts.size() != 1)
    throw NetError("semiflow of agent " + agent.name +
                   " does not have unique first/last transitions at " +
                   agent.wait);
  return {firsts[0], lasts[0]};
}

namespace {

// Directed bipartite graph of an agent subnet (nodes: places then
// transitions), used for strong connectivity and cycle enumeration.
struct AgentGraph {
  int n_places, n_trans;
  std::vector<std::vector<int>> adj;  // node -> nodes

  explicit AgentGraph(const Net& sub)
      : n_places(sub.n_places()), n_trans(sub.n_trans()),
        adj(sub.n_places() + sub.n_trans()) {
    for (int p = 0; p < n_places; ++p)
      for (int t = 0; t < n_trans; ++t) {
        if (sub.pre[p][t] > 0) adj[p].push_back(n_places + t);
        if (sub.post[p][t] > 0) adj[n_places + t].push_back(p);
      }
  }
};

bool strongly_connected(const AgentGraph& g) {
  int n = (int)g.adj.size();
  if (n == 0) return false;
  auto bfs = [&](bool reversed) {
    std::vector<std::vector<int>> adj = g.adj;
    if (reversed) {
      std::vector<std::vector<int>> rev(n);
      for (int v = 0; v < n; ++v)
        for (int w : adj[v]) rev[w].push_back(v);
      adj = rev;
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  return bfs(false) && bfs(true);
}

// All elementary cycles (as node lists) of a small digraph: DFS from each
// start node, visiting only nodes with index >= start so each cycle is
// reported once (at its smallest node).
void elementary_cycles(const AgentGraph& g,
                       const std::function<void(const std::vector<int>&)>& cb) {
  int n = (int)g.adj.size();
  std::vector<int> path;
  std::vector<char> on_path(n, 0);
  std::function<void(int, int)> dfs = [&](int start, int v) {
    path.push_back(v);
    on_path[v] = 1;
    for (int w : g.adj[v]) {
      if (w == start)
        cb(path);
      else if (w > start && !on_path[w])
        dfs(start, w);
    }
    on_path[v] = 0;
    path.pop_back();
  };
  for (int start = 0; start < n; ++start) dfs(start, start);
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? "," : "") + xs[i];
  return out;
}

}  // namespace

SspValidationReport validate_ssp(const NetDocument& doc) {
  if (!doc.decomposition)
    throw NetError("validate_ssp: document carries no decomposition");
  const SspDecomposition& d = *doc.decomposition;
  const Net& net = doc.net;
  SspValidationReport rep;
  rep.conditions.assign(6, {});

  // Conditions 1-2: agent place/transition sets and buffers partition P and T.
  {
    std::map<std::string, int> seen;
    bool ok = true;
    std::string ev;
    for (const AgentDecl& a : d.agents)
      for (const auto& p : a.places)
        if (++seen[p] > 1) { ok = false; ev = "place " + p + " declared twice"; }
    for (const auto& b : d.buffers)
      if (++seen[b] > 1) { ok = false; ev = "place " + b + " declared twice"; }
    for (const auto& p : net.places)
      if (!seen.count(p)) { ok = false; ev = "place " + p + " unassigned"; }
    rep.conditions[0] = {ok, ok ? "" : ev};

    std::map<std::string, int> tseen;
    ok = true;
    ev.clear();
    for (const AgentDecl& a : d.agents)
      for (const auto& t : a.transitions)
        if (++tseen[t] > 1) { ok = false; ev = "transition " + t + " declared twice"; }
    for (const auto& t : net.transitions)
      if (!tseen.count(t)) { ok = false; ev = "transition " + t + " unassigned"; }
    rep.conditions[1] = {ok, ok ? "" : ev};
  }

  // Condition 3: every agent subnet is a strongly connected state machine.
  for (const AgentDecl& a : d.agents) {
    Net sub = agent_subnet(net, a);
    for (int t = 0; t < sub.n_trans(); ++t) {
      long long ins = 0, outs = 0;
      bool weighted = false;
      for (int p = 0; p < sub.n_places(); ++p) {
        ins += sub.pre[p][t];
        outs += sub.post[p][t];
        if (sub.pre[p][t] > 1 || sub.post[p][t] > 1) weighted = true;
      }
      if (ins != 1 || outs != 1 || weighted) {
        rep.conditions[2] = {false, "agent " + a.name + ": transition " +
                                        sub.transitions[t] +
                                        " is not a state-machine transition"};
      }
    }
    if (rep.conditions[2].ok && !strongly_connected(AgentGraph(sub)))
      rep.conditions[2] = {false,
                          "agent " + a.name + " is not strongly connected"};
  }

  // Condition 4: buffers are destination private.
  for (const auto& b : d.buffers) {
    int bp = net.place_id(b);
    std::set<std::string> dests;
    for (int t : net.out_trans(bp)) {
      int ai = d.agent_of_trans(net.transitions[t]);
      dests.insert(ai < 0 ? "?" : d.agents[ai].name);
    }
    if (dests.size() > 1)
      rep.conditions[3] = {false, "buffer " + b + " feeds agents " +
                                      join({dests.begin(), dests.end()})};
  }

  // Condition 5: one marked place per agent (the waiting place), and every
  // agent cycle containing a buffer-consuming transition passes through it.
  for (const AgentDecl& a : d.agents) {
    std::vector<std::string> marked;
    for (const auto& p : a.places)
      if (doc.m0[net.place_id(p)] > 0) marked.push_back(p);
    if (marked.size() != 1) {
      rep.conditions[4] = {false, "agent " + a.name + " has marked places {" +
                                      join(marked) + "}, expected exactly one"};
      continue;
    }
    if (marked[0] != a.wait) {
      rep.conditions[4] = {false, "agent " + a.name + ": marked place " +
                                      marked[0] + " is not the waiting place " +
                                      a.wait};
      continue;
    }
    if (doc.m0[net.place_id(a.wait)] > 1)
      rep.notes.push_back("agent " + a.name + ": waiting place " + a.wait +
                          " carries " +
                          std::to_string(doc.m0[net.place_id(a.wait)]) +
                          " tokens (recorded, not rejected)");
    Net sub = agent_subnet(net, a);
    int pe = sub.place_id(a.wait);
    std::vector<char> consumes(sub.n_trans(), 0);
    for (const auto& b : d.buffers) {
      int bp = net.place_id(b);
      for (int t = 0; t < sub.n_trans(); ++t)
        if (net.pre[bp][net.trans_id(sub.transitions[t])] > 0) consumes[t] = 1;
    }
    bool bad = false;
    std::string ev;
    elementary_cycles(AgentGraph(sub), [&](const std::vector<int>& cycle) {
      if (bad) return;
      bool has_buffer_input = false, has_wait = false;
      for (int node : cycle) {
        if (node == pe) has_wait = true;
        if (node >= sub.n_places() && consumes[node - sub.n_places()])
          has_buffer_input = true;
      }
      if (has_buffer_input && !has_wait) {
        bad = true;
        std::vector<std::string> names;
        for (int node : cycle)
          names.push_back(node < sub.n_places()
                              ? sub.places[node]
                              : sub.transitions[node - sub.n_places()]);
        ev = "agent " + a.name + ": cycle {" + join(names) +
             "} consumes buffers but avoids " + a.wait;
      }
    });
    if (bad) rep.conditions[4] = {false, ev};
  }

  // Condition 6: the whole system is consistent and conservative.
  {
    PositiveWitness cons = is_consistent(net);
    PositiveWitness conv = is_conservative(net);
    if (!cons.positive)
      rep.conditions[5] = {false, "net is not consistent"};
    else if (!conv.positive)
      rep.conditions[5] = {false, "net is not conservative"};
  }
  return rep;
}

namespace {

struct MutableNet {
  std::vector<std::string> places, transitions;
  std::vector<std::vector<long long>> pre, post;  // [place][trans]
  std::map<std::string, std::string> labels;
  Marking m0;

  static MutableNet from(const NetDocument& doc) {
    return {doc.net.places, doc.net.transitions, doc.net.pre,
            doc.net.post,   doc.net.labels,      doc.m0};
  }
  void drop_place(int p) {
    places.erase(places.begin() + p);
    pre.erase(pre.begin() + p);
    post.erase(post.begin() + p);
    m0.erase(m0.begin() + p);
  }
  void drop_trans(int t) {
    labels.erase(transitions[t]);
    transitions.erase(transitions.begin() + t);
    for (auto& row : pre) row.erase(row.begin() + t);
    for (auto& row : post) row.erase(row.begin() + t);
  }
  std::vector<int> in_trans(int p) const {
    std::vector<int> out;
    for (std::size_t t = 0; t < transitions.size(); ++t)
      if (post[p][t] > 0) out.push_back((int)t);
    return out;
  }
  std::vector<int> out_trans(int p) const {
    std::vector<int> out;
    for (std::size_t t = 0; t < transitions.size(); ++t)
      if (pre[p][t] > 0) out.push_back((int)t);
    return out;
  }
};

// Identical transitions (equal pre and post columns): keep the first.
bool merge_identical(MutableNet& n) {
  for (std::size_t a = 0; a < n.transitions.size(); ++a)
    for (std::size_t b = a + 1; b < n.transitions.size(); ++b) {
      bool same = true;
      for (std::size_t p = 0; p < n.places.size() && same; ++p)
        same = n.pre[p][a] == n.pre[p][b] && n.post[p][a] == n.post[p][b];
      if (same) {
        n.drop_trans((int)b);
        return true;
      }
    }
  return false;
}

// Series place fusion: p -> t -> q with p's only output t, t's only input p,
// t's only output q (all weight 1), q unmarked and distinct from p: merge q
// into p and drop t.
bool fuse_series_place(MutableNet& n) {
  for (std::size_t t = 0; t < n.transitions.size(); ++t) {
    int p = -1, q = -1;
    long long ins = 0, outs = 0;
    for (std::size_t pp = 0; pp < n.places.size(); ++pp) {
      ins += n.pre[pp][t];
      outs += n.post[pp][t];
      if (n.pre[pp][t] == 1) p = (int)pp;
      if (n.post[pp][t] == 1) q = (int)pp;
    }
    if (ins != 1 || outs != 1 || p < 0 || q < 0 || p == q) continue;
    if (n.out_trans(p).size() != 1 || n.m0[q] != 0) continue;
    for (std::size_t tt = 0; tt < n.transitions.size(); ++tt) {
      n.pre[p][tt] += n.pre[q][tt];
      n.post[p][tt] += n.post[q][tt];
    }
    n.post[p][t] = 0;  // the fused arc itself disappears with t
    n.pre[p][t] = 0;
    n.drop_place(q);
    n.drop_trans((int)t);
    return true;
  }
  return false;
}

// Series transition fusion: t1 -> q -> t2 with q's only input t1, only output
// t2, t2's only input q, q unmarked: fuse into one transition.
bool fuse_series_trans(MutableNet& n) {
  for (std::size_t q = 0; q < n.places.size(); ++q) {
    auto ins = n.in_trans((int)q);
    auto outs = n.out_trans((int)q);
    if (ins.size() != 1 || outs.size() != 1 || n.m0[q] != 0) continue;
    int t1 = ins[0], t2 = outs[0];
    if (t1 == t2) continue;
    if (n.post[q][t1] != 1 || n.pre[q][t2] != 1) continue;
    long long t2_ins = 0;
    for (std::size_t p = 0; p < n.places.size(); ++p) t2_ins += n.pre[p][t2];
    if (t2_ins != 1) continue;  // t2 must consume only from q
    for (std::size_t p = 0; p < n.places.size(); ++p) {
      if ((int)p != (int)q) n.post[p][t1] += n.post[p][t2];
    }
    n.post[q][t1] = 0;
    n.transitions[t1] += "+" + n.transitions[t2];
    n.drop_trans(t2);
    n.drop_place((int)q);
    return true;
  }
  return false;
}

}  // namespace

NetDocument preprocess_reductions(const NetDocument& doc) {
  MutableNet n = MutableNet::from(doc);
  bool changed = true;
  while (changed)
    changed = merge_identical(n) || fuse_series_place(n) || fuse_series_trans(n);
  NetDocument out;
  out.name = doc.name;
  for (const auto& p : n.places) out.net.add_place(p);
  for (std::size_t t = 0; t < n.transitions.size(); ++t) {
    auto it = n.labels.find(n.transitions[t]);
    out.net.add_trans(n.transitions[t],
                      it == n.labels.end() ? "" : it->second);
  }
  for (std::size_t p = 0; p < n.places.size(); ++p)
    for (std::size_t t = 0; t < n.transitions.size(); ++t) {
      out.net.pre[p][t] = n.pre[p][t];
      out.net.post[p][t] = n.post[p][t];
    }
  out.m0 = n.m0;
  // The decomposition is not carried through reductions (fused elements no
  // longer match the declared partition); reduction is an opt-in preprocessing
  // step for semiflow computation.
  out.metadata = doc.metadata;
  return out;
}

}  // namespace ssp
