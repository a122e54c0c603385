#include "ssp/enforce.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ssp/reach.hpp"

namespace ssp {

namespace {

// Check-transition replay test: from marking m, is there a firing sequence whose count
// vector is exactly x? Depth-first search with memoization on (marking,
// remaining counts).
bool replay_exact(const Net& net, const Marking& m,
                  const std::vector<long long>& remaining,
                  std::set<std::pair<Marking, std::vector<long long>>>& seen) {
  if (std::all_of(remaining.begin(), remaining.end(),
                  [](long long v) { return v == 0; }))
    return true;
  auto key = std::make_pair(m, remaining);
  if (!seen.insert(key).second) return false;
  for (int t = 0; t < net.n_trans(); ++t) {
    if (remaining[t] == 0 || !is_enabled(net, m, t)) continue;
    Marking next = m;
    for (int p = 0; p < net.n_places(); ++p)
      next[p] += net.post[p][t] - net.pre[p][t];
    std::vector<long long> rem = remaining;
    --rem[t];
    if (replay_exact(net, next, rem, seen)) return true;
  }
  return false;
}

std::vector<char> conflict_transitions(const Net& net) {
  std::vector<char> conflict(net.n_trans(), 0);
  for (int p = 0; p < net.n_places(); ++p) {
    auto outs = net.out_trans(p);
    if (outs.size() >= 2)
      for (int t : outs) conflict[t] = 1;
  }
  return conflict;
}

}  // namespace

bool check_replays(const Net& net, const std::vector<int>& members,
                   const Semiflow& x) {
  Marking m(net.n_places(), 0);
  for (int t : members)
    for (int p = 0; p < net.n_places(); ++p) m[p] += net.post[p][t];
  std::set<std::pair<Marking, std::vector<long long>>> seen;
  return replay_exact(net, m, x.coeffs, seen);
}

CheckAssignment find_check_transitions(const Net& subnet,
                                       const std::vector<Semiflow>& xs,
                                       int max_set_size) {
  CheckAssignment out;
  std::vector<char> conflict = conflict_transitions(subnet);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    // Candidates: support transitions belonging to no other semiflow.
    std::vector<int> unique;
    for (int t : xs[j].support()) {
      bool shared = false;
      for (std::size_t k = 0; k < xs.size() && !shared; ++k)
        shared = k != j && xs[k].covers(t);
      if (!shared) unique.push_back(t);
    }
    // Prefer non-conflict transitions, then canonical (index) order.
    std::stable_sort(unique.begin(), unique.end(), [&](int a, int b) {
      return conflict[a] < conflict[b];
    });
    CheckChoice choice;
    choice.x = xs[j];
    for (int t : unique)
      if (check_replays(subnet, {t}, xs[j])) {
        choice.check_set = {t};
        break;
      }
    if (choice.check_set.empty()) {
      // Set search in increasing size.
      std::vector<int> sorted = unique;
      std::sort(sorted.begin(), sorted.end());
      int n = (int)sorted.size();
      for (int size = 2; size <= max_set_size && choice.check_set.empty();
           ++size) {
        std::vector<int> pick(size);
        std::function<bool(int, int)> rec = [&](int from, int depth) {
          if (depth == size)
            return check_replays(
                subnet, std::vector<int>(pick.begin(), pick.end()), xs[j]);
          for (int i = from; i < n; ++i) {
            pick[depth] = sorted[i];
            if (rec(i + 1, depth + 1)) return true;
          }
          return false;
        };
        if (rec(0, 0))
          choice.check_set.assign(pick.begin(), pick.end());
      }
    }
    if (choice.check_set.empty())
      throw NetError("no check transition (or qualifying set) found for "
                     "semiflow " +
                     std::to_string(j + 1));
    out.choices.push_back(std::move(choice));
  }
  return out;
}

Net make_virtual_check(const Net& subnet, const std::vector<int>& members,
                       std::string* new_trans) {
  Net net = subnet;
  std::string tch = "t_ch";
  for (int t : members) tch += "_" + subnet.transitions[t];
  net.add_trans(tch);
  for (int t : members) {
    std::string pv = "pv_" + subnet.transitions[t];
    net.add_place(pv);
    net.add_arc(subnet.transitions[t], pv);
    net.add_arc(pv, tch);
  }
  if (new_trans) *new_trans = tch;
  return net;
}

EnforcementResult enforce_liveness(const Net& subnet,
                                   const CheckAssignment& checks) {
  EnforcementResult res;
  res.checks = checks;
  res.enforced = subnet;
  // Materialize virtual checks first so their columns exist.
  for (auto& choice : res.checks.choices)
    if (choice.check_set.size() > 1) {
      std::string tch;
      res.enforced = make_virtual_check(res.enforced, choice.check_set, &tch);
      choice.virtual_trans = tch;
    }
  std::vector<char> conflict = conflict_transitions(subnet);
  std::set<int> t_ck;
  for (const auto& choice : res.checks.choices)
    if (choice.check_set.size() == 1) t_ck.insert(choice.check_set[0]);

  // One control place per conflict transition outside T_ck.
  std::map<int, std::string> place_of;  // original transition -> place id
  for (int t = 0; t < subnet.n_trans(); ++t) {
    if (!conflict[t] || t_ck.count(t)) continue;
    std::string id = "p_" + subnet.transitions[t];
    res.enforced.add_place(id);
    res.enforced.add_arc(id, subnet.transitions[t]);
    res.added_places.emplace_back(subnet.transitions[t], id);
    place_of[t] = id;
  }
  // Each check transition replenishes the places of its semiflow's
  // transitions with the semiflow coefficients.
  for (const auto& choice : res.checks.choices) {
    std::string check = choice.check_set.size() == 1
                            ? subnet.transitions[choice.check_set[0]]
                            : choice.virtual_trans;
    for (const auto& [t, id] : place_of)
      if (choice.x.coeffs[t] > 0)
        res.enforced.add_arc(check, id, choice.x.coeffs[t]);
  }
  // Live initial marking: the summed output columns of the check transitions.
  res.m0.assign(res.enforced.n_places(), 0);
  for (const auto& choice : res.checks.choices) {
    std::string check = choice.check_set.size() == 1
                            ? subnet.transitions[choice.check_set[0]]
                            : choice.virtual_trans;
    int ct = res.enforced.trans_id(check);
    for (int p = 0; p < res.enforced.n_places(); ++p)
      res.m0[p] += res.enforced.post[p][ct];
  }
  if (!is_live(res.enforced, res.m0))
    throw NetError("enforcement produced a non-live net (check-transition "
                   "assignment fails the replay condition)");
  return res;
}

ControlNet translate_to_control_net(const ControlNet& cn,
                                    const SimplifiedControlNet& scn,
                                    const EnforcementResult& result) {
  ControlNet out = cn;
  // Fused transition id -> sequence.
  std::map<std::string, const ControlSequence*> seq_of_fused;
  for (const auto& [sf, fused] : scn.fused_of)
    seq_of_fused[fused] = out.sequence_of(sf);

  auto grow_m0 = [&](long long tokens) { out.m0.push_back(tokens); };

  // Virtual check transitions (and their pv places) are carried over, with
  // member arcs re-attached to the members' last control transitions.
  std::map<std::string, std::string> check_ctrl;  // check trans -> control id
  for (const auto& choice : result.checks.choices) {
    if (choice.check_set.size() == 1) {
      const std::string& fused =
          result.enforced.transitions[choice.check_set[0]];
      auto it = seq_of_fused.find(fused);
      if (it == seq_of_fused.end() || !it->second)
        throw NetError("translate_to_control_net: dangling origin for " + fused);
      check_ctrl[fused] = it->second->last_ctrl;
    } else {
      out.net.add_trans(choice.virtual_trans);
      check_ctrl[choice.virtual_trans] = choice.virtual_trans;
      for (int t : choice.check_set) {
        const std::string& fused = result.enforced.transitions[t];
        auto it = seq_of_fused.find(fused);
        if (it == seq_of_fused.end() || !it->second)
          throw NetError("translate_to_control_net: dangling origin for " +
                         fused);
        std::string pv = "pv_" + fused;
        out.net.add_place(pv);
        grow_m0(0);
        out.net.add_arc(it->second->last_ctrl, pv);
        out.net.add_arc(pv, choice.virtual_trans);
      }
    }
  }

  // Homologous buffers for the enforcement places.
  for (const auto& [conflict_fused, p_s] : result.added_places) {
    auto it = seq_of_fused.find(conflict_fused);
    if (it == seq_of_fused.end() || !it->second)
      throw NetError("translate_to_control_net: dangling origin for " +
                     conflict_fused);
    const ControlSequence* seq = it->second;
    std::string bh = "bh_" + seq->semiflow_name;
    out.net.add_place(bh);
    int sp = result.enforced.place_id(p_s);
    int st = result.enforced.trans_id(conflict_fused);
    out.net.add_arc(bh, seq->first_ctrl, result.enforced.pre[sp][st]);
    for (const auto& [check, ctrl_id] : check_ctrl) {
      int ct = result.enforced.trans_id(check);
      if (result.enforced.post[sp][ct] > 0)
        out.net.add_arc(ctrl_id, bh, result.enforced.post[sp][ct]);
    }
    grow_m0(result.m0[sp]);
  }
  return out;
}

SynthesisOutcome synthesize_pipeline(const NetDocument& doc, bool reduce) {
  const NetDocument* input = &doc;
  NetDocument reduced;
  if (reduce) {
    reduced = preprocess_reductions(doc);
    if (reduced.net.places == doc.net.places &&
        reduced.net.transitions == doc.net.transitions) {
      reduced.decomposition = doc.decomposition;
      input = &reduced;
    } else {
      throw NetError("preprocessing changed the net; the declared "
                     "decomposition no longer applies, rerun without --reduce");
    }
  }
  SynthesisOutcome out;
  out.control = build_control_pn(*input);
  out.simplified = simplify_control_pn(out.control);
  out.classes = classify_subnets(out.simplified);
  out.structurally_live = structural_verdict(out.classes);
  if (out.structurally_live) return out;

  // Enforce liveness per structurally unresolved component.
  for (int k = 0; k < out.simplified.n_components; ++k) {
    if (out.classes[k].structurally_live) continue;
    Net component;
    for (int p = 0; p < out.simplified.net.n_places(); ++p)
      if (out.simplified.place_component[p] == k)
        component.add_place(out.simplified.net.places[p]);
    for (int t = 0; t < out.simplified.net.n_trans(); ++t)
      if (out.simplified.trans_component[t] == k)
        component.add_trans(out.simplified.net.transitions[t]);
    for (const auto& p : component.places)
      for (const auto& t : component.transitions) {
        int sp = out.simplified.net.place_id(p);
        int st = out.simplified.net.trans_id(t);
        component.pre[component.place_id(p)][component.trans_id(t)] =
            out.simplified.net.pre[sp][st];
        component.post[component.place_id(p)][component.trans_id(t)] =
            out.simplified.net.post[sp][st];
      }
    std::vector<Semiflow> xs = minimal_t_semiflows(component);
    CheckAssignment checks = find_check_transitions(component, xs);
    EnforcementResult res = enforce_liveness(component, checks);
    out.control = translate_to_control_net(out.control, out.simplified, res);
    out.enforcements.push_back(std::move(res));
  }
  return out;
}

}  // namespace ssp
