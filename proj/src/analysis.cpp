#include "ssp/analysis.hpp"

#include <algorithm>
#include <set>

namespace ssp {

bool is_siphon(const Net& net, const std::vector<int>& S) {
  std::set<int> in_set(S.begin(), S.end());
  for (int p : S)
    for (int t : net.in_trans(p)) {
      bool takes_from_s = false;
      for (int q : S)
        if (net.pre[q][t] > 0) { takes_from_s = true; break; }
      if (!takes_from_s) return false;
    }
  return true;
}

bool is_trap(const Net& net, const std::vector<int>& S) {
  for (int p : S)
    for (int t : net.out_trans(p)) {
      bool feeds_s = false;
      for (int q : S)
        if (net.post[q][t] > 0) { feeds_s = true; break; }
      if (!feeds_s) return false;
    }
  return true;
}

std::vector<int> maximal_trap_within(const Net& net,
                                     const std::vector<int>& S) {
  std::set<int> cur(S.begin(), S.end());
  bool changed = true;
  while (changed && !cur.empty()) {
    changed = false;
    for (auto it = cur.begin(); it != cur.end();) {
      int p = *it;
      bool keep = true;
      for (int t : net.out_trans(p)) {
        bool feeds_s = false;
        for (int q : cur)
          if (net.post[q][t] > 0) { feeds_s = true; break; }
        if (!feeds_s) { keep = false; break; }
      }
      if (keep) {
        ++it;
      } else {
        it = cur.erase(it);
        changed = true;
      }
    }
  }
  return {cur.begin(), cur.end()};
}

namespace {

// All minimal siphons containing the seed and none of the forbidden places:
// grow the set until every input transition of a member also consumes from a
// member, branching over which pre-place repairs a violated pair.
void siphon_search(const Net& net, std::set<int>& S,
                   const std::vector<char>& forbidden,
                   std::vector<std::vector<int>>& out, std::size_t cap,
                   std::size_t& visited) {
  if (++visited > cap)
    throw NetError("siphon enumeration exceeded candidate cap of " +
                   std::to_string(cap));
  // Find a violated condition.
  for (int p : S)
    for (int t : net.in_trans(p)) {
      bool takes_from_s = false;
      for (int q : S)
        if (net.pre[q][t] > 0) { takes_from_s = true; break; }
      if (takes_from_s) continue;
      for (int q : net.pre_places(t)) {
        if (forbidden[q] || S.count(q)) continue;
        S.insert(q);
        siphon_search(net, S, forbidden, out, cap, visited);
        S.erase(q);
      }
      return;  // this violation must be repaired on every branch
    }
  out.emplace_back(S.begin(), S.end());
}

}  // namespace

namespace {

// Enumeration core without the ordinarity check: the search only tests arc
// presence, so monitor_baseline can reuse it on nets whose monitor arcs carry
// weights above one.
std::vector<Siphon> minimal_siphons_impl(const Net& net, std::size_t cap) {
  std::vector<std::vector<int>> found;
  std::size_t visited = 0;
  // Every minimal siphon is discovered at the seed equal to its smallest
  // member, with all smaller places forbidden.
  for (int seed = 0; seed < net.n_places(); ++seed) {
    std::set<int> S{seed};
    std::vector<char> forbidden(net.n_places(), 0);
    for (int q = 0; q < seed; ++q) forbidden[q] = 1;
    siphon_search(net, S, forbidden, found, cap, visited);
  }
  // Keep only support-minimal sets (this also removes duplicates).
  std::sort(found.begin(), found.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.size() < b.size();
            });
  std::vector<Siphon> out;
  for (const auto& S : found) {
    bool dominated = false;
    for (const Siphon& kept : out)
      if (std::includes(S.begin(), S.end(), kept.places.begin(),
                        kept.places.end())) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    Siphon s;
    s.places = S;
    s.is_minimal = true;
    s.is_bad = maximal_trap_within(net, S).empty();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<Siphon> minimal_siphons(const Net& net, std::size_t cap) {
  if (!net.is_ordinary())
    throw NetError("minimal_siphons: net is not ordinary (siphon control is "
                   "only supported for arc weights of one)");
  return minimal_siphons_impl(net, cap);
}

std::pair<NetDocument, MonitorInfo> add_monitor(const NetDocument& doc,
                                                const std::vector<int>& S) {
  const Net& net = doc.net;
  if (!is_siphon(net, S)) throw NetError("add_monitor: set is not a siphon");
  long long tokens = 0;
  for (int p : S) tokens += doc.m0[p];
  if (tokens < 1)
    throw NetError("add_monitor: siphon is initially unmarked and cannot be "
                   "protected by a monitor");
  NetDocument out = doc;
  std::string id = "pm" + std::to_string(net.n_places());
  for (int k = 0; out.net.place_ids.count(id); ++k)
    id = "pm" + std::to_string(net.n_places() + k + 1);
  out.net.add_place(id);
  out.m0.push_back(tokens - 1);
  int pm = out.net.place_id(id);
  MonitorInfo info;
  info.place = id;
  info.siphon = S;
  for (int p : S) info.siphon_names.push_back(net.places[p]);
  // A siphon containing a trap can never be emptied once the trap is marked;
  // the audit records that such a monitor is redundant.
  info.redundant = !maximal_trap_within(net, S).empty();
  for (int t = 0; t < net.n_trans(); ++t) {
    long long c = 0;
    for (int p : S) c += net.flow(p, t);
    if (c > 0) out.net.post[pm][t] = c;
    if (c < 0) out.net.pre[pm][t] = -c;
  }
  if (doc.decomposition) {
    std::set<std::string> agents;
    for (int t : out.net.out_trans(pm)) {
      int ai = doc.decomposition->agent_of_trans(net.transitions[t]);
      if (ai >= 0) agents.insert(doc.decomposition->agents[ai].name);
    }
    info.fed_agents.assign(agents.begin(), agents.end());
    info.privacy_violation = agents.size() >= 2;
  }
  return {std::move(out), std::move(info)};
}

BaselineResult monitor_baseline(const NetDocument& doc,
                                std::size_t node_budget) {
  BaselineResult res;
  if (!doc.net.is_ordinary())
    throw NetError("monitor_baseline: net is not ordinary (siphon control is "
                   "only supported for arc weights of one)");
  res.controlled = doc;
  const int kMaxIterations = 10;
  for (res.iterations = 0; res.iterations < kMaxIterations; ++res.iterations) {
    // Monitor columns may be weighted even over an ordinary plant, so the
    // loop uses the unchecked enumeration after the first round.
    std::vector<Siphon> sips =
        minimal_siphons_impl(res.controlled.net, kSiphonCandidateCap);
    ReachGraph rg =
        reachability_graph(res.controlled.net, res.controlled.m0, node_budget);
    rg.require_exhaustive("monitor_baseline");
    std::vector<std::vector<int>> to_protect;
    for (const Siphon& s : sips) {
      if (!s.is_bad) continue;
      bool emptyable = false;
      for (const Marking& m : rg.nodes) {
        long long sum = 0;
        for (int p : s.places) sum += m[p];
        if (sum == 0) { emptyable = true; break; }
      }
      if (emptyable) to_protect.push_back(s.places);
    }
    if (to_protect.empty()) break;
    for (const auto& S : to_protect) {
      auto [next, info] = add_monitor(res.controlled, S);
      res.controlled = std::move(next);
      res.monitors.push_back(std::move(info));
    }
  }
  if (res.iterations == kMaxIterations)
    throw NetError("monitor_baseline: iteration cap exceeded");
  ReachGraph rg =
      reachability_graph(res.controlled.net, res.controlled.m0, node_budget);
  res.census = classify_markings(rg);
  return res;
}

PipelineCensus full_pipeline_census(const NetDocument& doc,
                                    std::size_t node_budget) {
  PipelineCensus pc;
  {
    ReachGraph rg = reachability_graph(doc.net, doc.m0, node_budget);
    pc.plant = classify_markings(rg);
  }
  try {
    BaselineResult base = monitor_baseline(doc, node_budget);
    pc.monitors_applicable = true;
    pc.monitors = base.census;
    pc.monitor_infos = std::move(base.monitors);
  } catch (const NetError& e) {
    pc.monitors_applicable = false;
    pc.monitors_note = e.what();
  }
  pc.synthesis = synthesize_pipeline(doc);
  NetDocument composed = compose(doc, pc.synthesis.control);
  ReachGraph rg = reachability_graph(composed.net, composed.m0, node_budget);
  pc.composed = classify_markings(rg);
  return pc;
}

Report pipeline_report(const NetDocument& doc, const PipelineCensus& pc) {
  Report r;
  r.add("pipeline", "net", doc.name.empty() ? "net" : doc.name);
  add_census(r, "plant", pc.plant);
  if (pc.monitors_applicable) {
    add_census(r, "monitors", pc.monitors);
    r.add("monitors", "monitor_count", (long long)pc.monitor_infos.size());
    for (std::size_t i = 0; i < pc.monitor_infos.size(); ++i) {
      const MonitorInfo& mi = pc.monitor_infos[i];
      std::string S;
      for (const auto& id : mi.siphon_names) S += (S.empty() ? "" : ",") + id;
      r.add("monitors", "siphon_" + std::to_string(i + 1), S);
      if (mi.privacy_violation) {
        std::string agents;
        for (const auto& a : mi.fed_agents)
          agents += (agents.empty() ? "" : ",") + a;
        r.add("monitors", "privacy_violation_" + std::to_string(i + 1),
              mi.place + " feeds " + agents);
      }
    }
  } else {
    r.add("monitors", "skipped", pc.monitors_note);
  }
  add_census(r, "composed", pc.composed);
  r.add("composed", "structurally_live",
        pc.synthesis.structurally_live ? "true" : "false");
  r.add("composed", "enforced_components",
        (long long)pc.synthesis.enforcements.size());
  return r;
}

}  // namespace ssp
