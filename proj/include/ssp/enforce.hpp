#pragma once

#include "ssp/control.hpp"

namespace ssp {

// Check choice for one T-semiflow of a subnet: either a single check
// transition (check_set of size 1) or a set synchronized by a virtual check.
struct CheckChoice {
  Semiflow x;                  // over the subnet's transitions
  std::vector<int> check_set;  // transition indices in the subnet
  std::string virtual_trans;   // non-empty when a virtual check was added
};

struct CheckAssignment {
  std::vector<CheckChoice> choices;
};

// Whether firing the members' output tokens alone admits a firing sequence
// whose count vector is exactly x (exact-count replay test).
bool check_replays(const Net& net, const std::vector<int>& members,
                   const Semiflow& x);

// For each minimal T-semiflow x of the subnet, find a transition that (a) is
// in no other semiflow's support and (b) re-enables a complete replay of x
// from its own output tokens; falls back to set search (sizes up to
// max_set_size) when no single transition qualifies.
CheckAssignment find_check_transitions(const Net& subnet,
                                       const std::vector<Semiflow>& xs,
                                       int max_set_size = 4);

// Adds one unit place per set member feeding a new synchronizing transition
// (the virtual check); returns its id through new_trans.
Net make_virtual_check(const Net& subnet, const std::vector<int>& members,
                       std::string* new_trans);

struct EnforcementResult {
  Net enforced;
  Marking m0;  // live initial marking (sum of the check transitions' columns)
  // conflict transition name -> added control place name
  std::vector<std::pair<std::string, std::string>> added_places;
  CheckAssignment checks;
};

// Algorithm 2: one control place per conflict non-check transition, weights
// from the semiflow coefficients at the check columns; asserts liveness of
// the result by exhaustive reachability (hard failure otherwise).
EnforcementResult enforce_liveness(const Net& subnet,
                                   const CheckAssignment& checks);

// Translate places added on the simplified net back into the full
// control net as homologous buffers (consume at the semiflow's first
// transition, produced by the check semiflows' last transitions).
ControlNet translate_to_control_net(const ControlNet& cn,
                                    const SimplifiedControlNet& scn,
                                    const EnforcementResult& result);

// End-to-end synthesis: control-net construction, simplification, the
// structural liveness test, and (when some subnet is neither CF nor JF)
// check-transition search, enforcement, and translation back.
struct SynthesisOutcome {
  ControlNet control;  // enforcement already translated in when needed
  SimplifiedControlNet simplified;
  std::vector<SubnetClass> classes;
  bool structurally_live = false;
  std::vector<EnforcementResult> enforcements;  // one per non-live component
};

SynthesisOutcome synthesize_pipeline(const NetDocument& doc,
                                     bool reduce = false);

}  // namespace ssp
