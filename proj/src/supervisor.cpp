#include "ssp/supervisor.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace ssp {

namespace {

// Is plant transition t interior to sequence seq (in the support but neither
// first nor last)?
bool is_interior(const ControlSequence& seq, const std::string& t) {
  if (t == seq.plant_first || t == seq.plant_last) return false;
  for (const auto& [name, coeff] : seq.plant_support)
    if (name == t && coeff > 0) return true;
  return false;
}

bool in_support(const ControlSequence& seq, const std::string& t) {
  for (const auto& [name, coeff] : seq.plant_support)
    if (name == t && coeff > 0) return true;
  return false;
}

}  // namespace

GuardTable build_guard_table(const NetDocument& doc, const ControlNet& cn) {
  GuardTable gt;
  gt.labeled.assign(doc.net.n_trans(), {});
  gt.member_px.assign(doc.net.n_trans(), {});
  for (int t = 0; t < doc.net.n_trans(); ++t) {
    const std::string& name = doc.net.transitions[t];
    for (int ct = 0; ct < cn.net.n_trans(); ++ct) {
      auto it = cn.net.labels.find(cn.net.transitions[ct]);
      if (it != cn.net.labels.end() && it->second == name)
        gt.labeled[t].push_back(ct);
    }
    for (const auto& seq : cn.sequences)
      if (in_support(seq, name))
        gt.member_px[t].push_back(cn.net.place_id(seq.px));
  }
  return gt;
}

bool guard_true(const GuardTable& gt, const Net& cnet, const Marking& mc,
                int plant_t) {
  for (int ct : gt.labeled[plant_t])
    if (is_enabled(cnet, mc, ct)) return true;
  for (int px : gt.member_px[plant_t])
    if (mc[px] == 1) return true;
  return false;
}

namespace {

std::vector<int> enabled_labeled(const ControlNet& cn, const GuardTable& gt,
                                 const Marking& mc, int plant_t) {
  std::vector<int> out;
  for (int ct : gt.labeled[plant_t])
    if (is_enabled(cn.net, mc, ct)) out.push_back(ct);
  return out;
}

// Plant transitions fireable in one supervised step: plant-enabled, guard
// true, and (when labeled control transitions exist) some labeled one enabled.
std::vector<int> fireable(const NetDocument& doc, const ControlNet& cn,
                          const GuardTable& gt, const Marking& ms,
                          const Marking& mc) {
  std::vector<int> out;
  for (int t = 0; t < doc.net.n_trans(); ++t) {
    if (!is_enabled(doc.net, ms, t)) continue;
    if (!guard_true(gt, cn.net, mc, t)) continue;
    if (!gt.labeled[t].empty() && enabled_labeled(cn, gt, mc, t).empty())
      continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace

void control_step(const NetDocument& doc, const ControlNet& cn,
                  const GuardTable& gt, SupervisorState& st, int plant_t,
                  int ctrl_choice) {
  if (!is_enabled(doc.net, st.ms, plant_t) ||
      !guard_true(gt, cn.net, st.mc, plant_t))
    throw NetError("control_step: " + doc.net.transitions[plant_t] +
                   " is not fireable under the supervisor");
  std::vector<int> ctrls = enabled_labeled(cn, gt, st.mc, plant_t);
  if (!gt.labeled[plant_t].empty() && ctrls.empty())
    throw NetError("control_step: no enabled control transition labeled " +
                   doc.net.transitions[plant_t]);
  st.ms = fire(doc.net, st.ms, plant_t);
  TraceStep step;
  step.index = (int)st.trace.size();
  step.plant_trans = doc.net.transitions[plant_t];
  if (!ctrls.empty()) {
    if (ctrl_choice < 0 || ctrl_choice >= (int)ctrls.size())
      throw NetError("control_step: control choice out of range");
    st.mc = fire(cn.net, st.mc, ctrls[ctrl_choice]);
    step.ctrl_trans = cn.net.transitions[ctrls[ctrl_choice]];
  }
  st.trace.push_back(std::move(step));
}

RunResult run(const NetDocument& doc, const ControlNet& cn, const Marking& mc0,
              Policy policy, std::uint64_t seed, std::size_t steps,
              const std::vector<std::string>& script,
              std::size_t node_budget) {
  if (!is_live(cn.net, mc0, node_budget))
    throw NetError("run: the control net is not live under the supplied "
                   "marking (liveness hypothesis violated)");
  GuardTable gt = build_guard_table(doc, cn);
  RunResult res;
  res.state.ms = doc.m0;
  res.state.mc = mc0;

  if (policy == Policy::Exhaustive) {
    res.exhaustive = true;
    // Joint (ms, mc) exploration branching over all control choices.
    auto joint = [&](const Marking& ms, const Marking& mc) {
      Marking j = ms;
      j.insert(j.end(), mc.begin(), mc.end());
      return j;
    };
    std::map<Marking, int> index;
    std::vector<std::pair<Marking, Marking>> nodes{{doc.m0, mc0}};
    index[joint(doc.m0, mc0)] = 0;
    std::vector<Edge> edges;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      auto [ms, mc] = nodes[v];
      for (int t : fireable(doc, cn, gt, ms, mc)) {
        Marking ms2 = fire(doc.net, ms, t);
        std::vector<int> ctrls = enabled_labeled(cn, gt, mc, t);
        std::vector<Marking> mcs;
        if (ctrls.empty())
          mcs.push_back(mc);
        else
          for (int ct : ctrls) mcs.push_back(fire(cn.net, mc, ct));
        for (const Marking& mc2 : mcs) {
          Marking key = joint(ms2, mc2);
          auto it = index.find(key);
          int w;
          if (it != index.end()) {
            w = it->second;
          } else {
            if (nodes.size() >= node_budget)
              throw TruncationError("run: joint exploration exceeded budget");
            w = (int)nodes.size();
            nodes.emplace_back(ms2, mc2);
            index[key] = w;
            queue.push_back(w);
          }
          edges.push_back({v, t, w});
        }
      }
    }
    res.census = classify_graph(nodes.size(), edges, doc.net.n_trans());
    res.verdict = "completed";
    return res;
  }

  if (policy == Policy::Scripted) {
    for (std::size_t i = 0; i < script.size(); ++i) {
      int t = doc.net.trans_id(script[i]);
      if (t < 0) throw NetError("unknown transition in script: " + script[i]);
      std::vector<int> fs = fireable(doc, cn, gt, res.state.ms, res.state.mc);
      if (std::find(fs.begin(), fs.end(), t) == fs.end()) {
        res.verdict = "blocked";
        res.blocked_index = (long long)i;
        return res;
      }
      control_step(doc, cn, gt, res.state, t, 0);
    }
    res.verdict = "completed";
    return res;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < steps; ++i) {
    std::vector<int> fs = fireable(doc, cn, gt, res.state.ms, res.state.mc);
    if (fs.empty()) {
      res.verdict = "terminal";
      return res;
    }
    int t = fs[rng() % fs.size()];
    std::vector<int> ctrls = enabled_labeled(cn, gt, res.state.mc, t);
    int choice = ctrls.empty() ? 0 : (int)(rng() % ctrls.size());
    control_step(doc, cn, gt, res.state, t, choice);
  }
  res.verdict = "completed";
  return res;
}

NetDocument compose(const NetDocument& doc, const ControlNet& cn) {
  NetDocument out;
  out.name = doc.name + "_composed";
  const Net& plant = doc.net;

  // Plant places (agent places and buffers) keep their names and marking;
  // control places except pb are carried over (pb is identified with its
  // plant buffer).
  std::map<std::string, std::string> ctrl_place_name;  // control -> composed
  for (const auto& [buffer, pb] : cn.buffer_place) ctrl_place_name[pb] = buffer;
  for (const auto& p : plant.places) {
    out.net.add_place(p);
    out.m0.push_back(doc.m0[plant.place_id(p)]);
  }
  for (int cp = 0; cp < cn.net.n_places(); ++cp) {
    const std::string& id = cn.net.places[cp];
    if (ctrl_place_name.count(id)) continue;  // a pb place
    out.net.add_place(id);
    ctrl_place_name[id] = id;
    out.m0.push_back(cn.m0[cp]);
  }

  std::set<std::string> agent_places;
  if (doc.decomposition)
    for (const AgentDecl& a : doc.decomposition->agents)
      for (const auto& p : a.places) agent_places.insert(p);

  auto add_plant_arcs = [&](const std::string& plant_t,
                            const std::string& comp_t, bool agents_only) {
    int t = plant.trans_id(plant_t);
    int ct = out.net.trans_id(comp_t);
    for (int p = 0; p < plant.n_places(); ++p) {
      if (agents_only && !agent_places.count(plant.places[p])) continue;
      int cp = out.net.place_id(plant.places[p]);
      out.net.pre[cp][ct] += plant.pre[p][t];
      out.net.post[cp][ct] += plant.post[p][t];
    }
  };
  auto add_ctrl_arcs = [&](const std::string& ctrl_t,
                           const std::string& comp_t) {
    int t = cn.net.trans_id(ctrl_t);
    int ct = out.net.trans_id(comp_t);
    for (int p = 0; p < cn.net.n_places(); ++p) {
      int cp = out.net.place_id(ctrl_place_name.at(cn.net.places[p]));
      out.net.pre[cp][ct] += cn.net.pre[p][t];
      out.net.post[cp][ct] += cn.net.post[p][t];
    }
  };

  // Control transitions by label.
  std::map<std::string, std::vector<std::string>> labeled;
  for (const auto& tid : cn.net.transitions) {
    auto it = cn.net.labels.find(tid);
    if (it != cn.net.labels.end()) labeled[it->second].push_back(tid);
  }
  // Semiflow name of each control transition (for composed naming).
  std::map<std::string, std::string> semiflow_of_ctrl;
  for (const auto& seq : cn.sequences) {
    semiflow_of_ctrl[seq.first_ctrl] = seq.semiflow_name;
    semiflow_of_ctrl[seq.last_ctrl] = seq.semiflow_name;
  }

  for (const auto& plant_t : plant.transitions) {
    auto lab = labeled.find(plant_t);
    std::vector<const ControlSequence*> interior;
    for (const auto& seq : cn.sequences)
      if (is_interior(seq, plant_t)) interior.push_back(&seq);
    int copies =
        (lab == labeled.end() ? 0 : (int)lab->second.size()) +
        (int)interior.size();
    if (copies == 0) {
      // Unsupervised transition: kept as-is with all its arcs.
      out.net.add_trans(plant_t);
      add_plant_arcs(plant_t, plant_t, false);
      continue;
    }
    if (lab != labeled.end())
      for (const auto& ctrl_t : lab->second) {
        std::string name = copies == 1
                               ? plant_t
                               : plant_t + "_" + semiflow_of_ctrl.at(ctrl_t);
        out.net.add_trans(name, plant_t);
        add_plant_arcs(plant_t, name, true);
        add_ctrl_arcs(ctrl_t, name);
      }
    for (const ControlSequence* seq : interior) {
      std::string name =
          copies == 1 ? plant_t : plant_t + "_" + seq->semiflow_name;
      out.net.add_trans(name, plant_t);
      add_plant_arcs(plant_t, name, true);
      int cp = out.net.place_id(seq->px);
      int ct = out.net.trans_id(name);
      out.net.pre[cp][ct] += 1;
      out.net.post[cp][ct] += 1;
    }
  }
  // Control-only transitions (virtual checks) are carried unchanged.
  for (const auto& tid : cn.net.transitions)
    if (!cn.net.labels.count(tid)) {
      out.net.add_trans(tid);
      add_ctrl_arcs(tid, tid);
    }
  return out;
}

}  // namespace ssp
