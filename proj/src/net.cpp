#include "ssp/net.hpp"

#include <algorithm>

namespace ssp {

int Net::add_place(const std::string& id) {
  if (place_ids.count(id) || trans_ids.count(id))
    throw NetError("duplicate identifier: " + id);
  int idx = (int)places.size();
  places.push_back(id);
  place_ids[id] = idx;
  pre.emplace_back(transitions.size(), 0);
  post.emplace_back(transitions.size(), 0);
  return idx;
}

int Net::add_trans(const std::string& id, const std::string& label) {
  if (place_ids.count(id) || trans_ids.count(id))
    throw NetError("duplicate identifier: " + id);
  int idx = (int)transitions.size();
  transitions.push_back(id);
  trans_ids[id] = idx;
  if (!label.empty()) labels[id] = label;
  for (auto& row : pre) row.push_back(0);
  for (auto& row : post) row.push_back(0);
  return idx;
}

void Net::add_arc(const std::string& from, const std::string& to, long long w) {
  if (w < 0) throw NetError("negative arc weight on " + from + " -> " + to);
  auto pf = place_ids.find(from);
  auto pt = place_ids.find(to);
  if (pf != place_ids.end()) {
    auto tt = trans_ids.find(to);
    if (tt == trans_ids.end())
      throw NetError("arc to undeclared transition: " + to);
    pre[pf->second][tt->second] += w;
    return;
  }
  auto tf = trans_ids.find(from);
  if (tf == trans_ids.end()) throw NetError("arc from undeclared node: " + from);
  if (pt == place_ids.end()) throw NetError("arc to undeclared place: " + to);
  post[pt->second][tf->second] += w;
}

int Net::place_id(const std::string& id) const {
  auto it = place_ids.find(id);
  return it == place_ids.end() ? -1 : it->second;
}

int Net::trans_id(const std::string& id) const {
  auto it = trans_ids.find(id);
  return it == trans_ids.end() ? -1 : it->second;
}

bool Net::is_ordinary() const {
  for (int p = 0; p < n_places(); ++p)
    for (int t = 0; t < n_trans(); ++t)
      if (pre[p][t] > 1 || post[p][t] > 1) return false;
  return true;
}

std::vector<int> Net::pre_places(int t) const {
  std::vector<int> out;
  for (int p = 0; p < n_places(); ++p)
    if (pre[p][t] > 0) out.push_back(p);
  return out;
}

std::vector<int> Net::post_places(int t) const {
  std::vector<int> out;
  for (int p = 0; p < n_places(); ++p)
    if (post[p][t] > 0) out.push_back(p);
  return out;
}

std::vector<int> Net::out_trans(int p) const {
  std::vector<int> out;
  for (int t = 0; t < n_trans(); ++t)
    if (pre[p][t] > 0) out.push_back(t);
  return out;
}

std::vector<int> Net::in_trans(int p) const {
  std::vector<int> out;
  for (int t = 0; t < n_trans(); ++t)
    if (post[p][t] > 0) out.push_back(t);
  return out;
}

static void check_marking(const Net& net, const Marking& m) {
  if ((int)m.size() != net.n_places())
    throw NetError("marking size does not match net place count");
}

bool is_enabled(const Net& net, const Marking& m, int t) {
  for (int p = 0; p < net.n_places(); ++p)
    if (m[p] < net.pre[p][t]) return false;
  return true;
}

std::vector<int> enabled(const Net& net, const Marking& m) {
  check_marking(net, m);
  std::vector<int> out;
  for (int t = 0; t < net.n_trans(); ++t)
    if (is_enabled(net, m, t)) out.push_back(t);
  return out;
}

Marking fire(const Net& net, const Marking& m, int t) {
  check_marking(net, m);
  if (t < 0 || t >= net.n_trans()) throw NetError("unknown transition index");
  for (int p = 0; p < net.n_places(); ++p)
    if (m[p] < net.pre[p][t])
      throw NetError("transition " + net.transitions[t] +
                     " not enabled: place " + net.places[p] + " holds " +
                     std::to_string(m[p]) + " of " +
                     std::to_string(net.pre[p][t]));
  Marking out = m;
  for (int p = 0; p < net.n_places(); ++p)
    out[p] += net.post[p][t] - net.pre[p][t];
  return out;
}

Marking fire_sequence(const Net& net, const Marking& m,
                      const std::vector<int>& steps) {
  Marking cur = m;
  std::vector<long long> count(net.n_trans(), 0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!is_enabled(net, cur, steps[i]))
      throw NetError("step " + std::to_string(i) + " (" +
                     net.transitions[steps[i]] + ") not enabled");
    cur = fire(net, cur, steps[i]);
    ++count[steps[i]];
  }
  // Cross-check against the state equation m + C * count.
  for (int p = 0; p < net.n_places(); ++p) {
    long long v = m[p];
    for (int t = 0; t < net.n_trans(); ++t) v += count[t] * net.flow(p, t);
    if (v != cur[p])
      throw NetError("state equation mismatch at place " + net.places[p]);
  }
  return cur;
}

Marking fire_sequence(const Net& net, const Marking& m,
                      const std::vector<std::string>& steps) {
  std::vector<int> idx;
  idx.reserve(steps.size());
  for (const auto& s : steps) {
    int t = net.trans_id(s);
    if (t < 0) throw NetError("unknown transition: " + s);
    idx.push_back(t);
  }
  return fire_sequence(net, m, idx);
}

Marking make_marking(
    const Net& net,
    const std::vector<std::pair<std::string, long long>>& tokens) {
  Marking m(net.n_places(), 0);
  for (const auto& [id, v] : tokens) {
    int p = net.place_id(id);
    if (p < 0) throw NetError("unknown place: " + id);
    m[p] = v;
  }
  return m;
}

}  // namespace ssp
