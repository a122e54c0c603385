#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssp {

// Base class for all toolkit errors.
struct NetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed (maps to CLI exit code 2).
struct ParseError : NetError {
  using NetError::NetError;
};

// An exact result was requested but exploration hit its node budget.
struct TruncationError : NetError {
  using NetError::NetError;
};

using Marking = std::vector<long long>;

// Place/transition net with natural-valued pre/post incidence matrices.
// Matrices are indexed [place][transition]. Transitions may carry a label
// (used by control nets, where several control transitions share the name
// of one plant transition).
struct Net {
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  std::vector<std::vector<long long>> pre;
  std::vector<std::vector<long long>> post;
  std::map<std::string, std::string> labels;  // transition id -> label

  std::map<std::string, int> place_ids;
  std::map<std::string, int> trans_ids;

  int add_place(const std::string& id);
  int add_trans(const std::string& id, const std::string& label = "");
  // Adds w to the arc from -> to; direction (pre/post) inferred from which
  // side names a place. Throws NetError on unknown ids or place->place arcs.
  void add_arc(const std::string& from, const std::string& to, long long w = 1);

  int place_id(const std::string& id) const;  // -1 when absent
  int trans_id(const std::string& id) const;
  int n_places() const { return (int)places.size(); }
  int n_trans() const { return (int)transitions.size(); }

  long long flow(int p, int t) const { return post[p][t] - pre[p][t]; }
  bool is_ordinary() const;

  std::vector<int> pre_places(int t) const;   // places p with pre[p][t] > 0
  std::vector<int> post_places(int t) const;  // places p with post[p][t] > 0
  std::vector<int> out_trans(int p) const;    // transitions t with pre[p][t] > 0
  std::vector<int> in_trans(int p) const;     // transitions t with post[p][t] > 0
};

// Firing semantics. Markings are never mutated in place.
std::vector<int> enabled(const Net& net, const Marking& m);
bool is_enabled(const Net& net, const Marking& m, int t);
Marking fire(const Net& net, const Marking& m, int t);
Marking fire_sequence(const Net& net, const Marking& m,
                      const std::vector<int>& steps);
Marking fire_sequence(const Net& net, const Marking& m,
                      const std::vector<std::string>& steps);

// Builds a marking from (place name, tokens) pairs; unlisted places get 0.
Marking make_marking(const Net& net,
                     const std::vector<std::pair<std::string, long long>>& tokens);

}  // namespace ssp
