#include "ssp/control.hpp"

#include <algorithm>

namespace ssp {

const ControlSequence* ControlNet::sequence_of(
    const std::string& semiflow_name) const {
  for (const auto& s : sequences)
    if (s.semiflow_name == semiflow_name) return &s;
  return nullptr;
}

ControlNet build_control_pn(const NetDocument& doc) {
  if (!doc.decomposition)
    throw NetError("build_control_pn: document carries no decomposition");
  SspValidationReport rep = validate_ssp(doc);
  if (!rep.all_ok()) {
    std::string why;
    for (std::size_t i = 0; i < rep.conditions.size(); ++i)
      if (!rep.conditions[i].ok)
        why += " [condition " + std::to_string(i + 1) + ": " +
               rep.conditions[i].evidence + "]";
    throw NetError("build_control_pn: net is not an SSP:" + why);
  }
  const SspDecomposition& d = *doc.decomposition;
  const Net& plant = doc.net;

  ControlNet cn;
  cn.plant_globals = minimal_t_semiflows(plant);

  // One pb place per buffer, one pN place per agent.
  for (const auto& b : d.buffers) {
    std::string id = "pb_" + b;
    cn.net.add_place(id);
    cn.buffer_place[b] = id;
  }
  for (const AgentDecl& a : d.agents) {
    std::string id = "pN_" + a.name;
    cn.net.add_place(id);
    cn.agent_place[a.name] = id;
  }

  // Local T-semiflow numbering continues after the globals, agents in
  // declaration order, semiflows in canonical order.
  int counter = (int)cn.plant_globals.size();
  for (const AgentDecl& a : d.agents) {
    Net sub = agent_subnet(plant, a);
    for (const Semiflow& x : local_t_semiflows(plant, a)) {
      ControlSequence seq;
      seq.semiflow_name = "x" + std::to_string(++counter);
      seq.agent = a.name;
      auto [tf, tl] = first_last_transitions(plant, a, x);
      seq.plant_first = tf;
      seq.plant_last = tl;
      for (int i : x.support())
        seq.plant_support.emplace_back(sub.transitions[i], x.coeffs[i]);
      seq.first_ctrl = "t" + seq.semiflow_name + "_first";
      seq.px = "px_" + seq.semiflow_name;
      seq.last_ctrl = "t" + seq.semiflow_name + "_last";
      cn.net.add_place(seq.px);
      cn.net.add_trans(seq.first_ctrl, tf);
      cn.net.add_trans(seq.last_ctrl, tl);
      // The sequence skeleton: pN -> first -> px -> last -> pN.
      cn.net.add_arc(cn.agent_place[a.name], seq.first_ctrl);
      cn.net.add_arc(seq.first_ctrl, seq.px);
      cn.net.add_arc(seq.px, seq.last_ctrl);
      cn.net.add_arc(seq.last_ctrl, cn.agent_place[a.name]);
      // Aggregated buffer arcs: everything the semiflow consumes from a
      // buffer is taken at the first transition, everything it produces is
      // delivered at the last one.
      for (const auto& b : d.buffers) {
        int bp = plant.place_id(b);
        long long consumed = 0, produced = 0;
        for (const auto& [t, coeff] : seq.plant_support) {
          consumed += coeff * plant.pre[bp][plant.trans_id(t)];
          produced += coeff * plant.post[bp][plant.trans_id(t)];
        }
        if (consumed > 0)
          cn.net.add_arc(cn.buffer_place[b], seq.first_ctrl, consumed);
        if (produced > 0)
          cn.net.add_arc(seq.last_ctrl, cn.buffer_place[b], produced);
      }
      cn.sequences.push_back(std::move(seq));
    }
  }
  cn.m0.assign(cn.net.n_places(), 0);
  for (const auto& [agent, id] : cn.agent_place)
    cn.m0[cn.net.place_id(id)] = 1;
  return cn;
}

SimplifiedControlNet simplify_control_pn(const ControlNet& cn) {
  SimplifiedControlNet scn;
  // Agent-place elimination precondition: on the fused columns every pN place must see equal
  // pre and post weights (it is then implicit once marked).
  for (const auto& [agent, pn_id] : cn.agent_place) {
    int p = cn.net.place_id(pn_id);
    for (const auto& seq : cn.sequences) {
      if (seq.agent != agent) continue;
      int tf = cn.net.trans_id(seq.first_ctrl);
      int tl = cn.net.trans_id(seq.last_ctrl);
      long long fused_pre = cn.net.pre[p][tf] + cn.net.pre[p][tl];
      long long fused_post = cn.net.post[p][tf] + cn.net.post[p][tl];
      if (fused_pre != fused_post)
        throw NetError("simplify_control_pn: place " + pn_id +
                       " is not implicit on fused transition of " +
                       seq.semiflow_name);
    }
  }
  // Keep only the pb places; fuse each sequence into one transition t_<x>.
  for (const auto& [buffer, pb_id] : cn.buffer_place) scn.net.add_place(pb_id);
  for (const auto& seq : cn.sequences) {
    std::string fused = "t_" + seq.semiflow_name;
    scn.net.add_trans(fused);
    scn.fused_of[seq.semiflow_name] = fused;
    int tf = cn.net.trans_id(seq.first_ctrl);
    int tl = cn.net.trans_id(seq.last_ctrl);
    int ft = scn.net.trans_id(fused);
    for (const auto& [buffer, pb_id] : cn.buffer_place) {
      int cp = cn.net.place_id(pb_id);
      int sp = scn.net.place_id(pb_id);
      scn.net.pre[sp][ft] = cn.net.pre[cp][tf] + cn.net.pre[cp][tl];
      scn.net.post[sp][ft] = cn.net.post[cp][tf] + cn.net.post[cp][tl];
    }
  }
  scn.m0.assign(scn.net.n_places(), 0);

  // Weakly connected components over places and transitions.
  int np = scn.net.n_places(), nt = scn.net.n_trans();
  std::vector<int> comp(np + nt, -1);
  int ncomp = 0;
  for (int seed = 0; seed < np + nt; ++seed) {
    if (comp[seed] != -1) continue;
    std::vector<int> stack{seed};
    comp[seed] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v < np) {
        for (int t = 0; t < nt; ++t)
          if ((scn.net.pre[v][t] > 0 || scn.net.post[v][t] > 0) &&
              comp[np + t] == -1) {
            comp[np + t] = ncomp;
            stack.push_back(np + t);
          }
      } else {
        int t = v - np;
        for (int p = 0; p < np; ++p)
          if ((scn.net.pre[p][t] > 0 || scn.net.post[p][t] > 0) &&
              comp[p] == -1) {
            comp[p] = ncomp;
            stack.push_back(p);
          }
      }
    }
    ++ncomp;
  }
  scn.place_component.assign(comp.begin(), comp.begin() + np);
  scn.trans_component.assign(comp.begin() + np, comp.end());
  scn.n_components = ncomp;
  return scn;
}

std::vector<SubnetClass> classify_subnets(const SimplifiedControlNet& scn) {
  std::vector<SubnetClass> out(scn.n_components, SubnetClass{true, true, false});
  for (int p = 0; p < scn.net.n_places(); ++p)
    if (scn.net.out_trans(p).size() > 1)
      out[scn.place_component[p]].cf = false;
  for (int t = 0; t < scn.net.n_trans(); ++t)
    if (scn.net.pre_places(t).size() > 1)
      out[scn.trans_component[t]].jf = false;
  for (auto& c : out) c.structurally_live = c.cf || c.jf;
  return out;
}

bool structural_verdict(const std::vector<SubnetClass>& classes) {
  return std::all_of(classes.begin(), classes.end(), [](const SubnetClass& c) {
    return c.structurally_live;
  });
}

Marking constructive_live_marking(const ControlNet& cn,
                                  const NetDocument& doc) {
  Marking m = cn.m0;  // pN places already carry one token
  for (const auto& [buffer, pb_id] : cn.buffer_place) {
    int bp = doc.net.place_id(buffer);
    long long tokens = 0;
    for (const Semiflow& g : cn.plant_globals)
      for (int t = 0; t < doc.net.n_trans(); ++t)
        tokens += g.coeffs[t] * doc.net.post[bp][t];
    m[cn.net.place_id(pb_id)] = tokens;
  }
  return m;
}

Marking control_marking_from_plant(const ControlNet& cn, const NetDocument& doc,
                                   const Marking& plant_m) {
  Marking m = cn.m0;
  for (const auto& [buffer, pb_id] : cn.buffer_place)
    m[cn.net.place_id(pb_id)] = plant_m[doc.net.place_id(buffer)];
  return m;
}

}  // namespace ssp
