#pragma once

#include "ssp/io.hpp"
#include "ssp/semiflows.hpp"

namespace ssp {

struct ConditionVerdict {
  bool ok = true;
  std::string evidence;  // empty when ok
};

// Verdicts for the six membership conditions:
//   1 place partition, 2 transition partition, 3 strongly connected state
//   machines, 4 destination-private buffers, 5 single marked waiting place
//   covering all buffer-consuming cycles, 6 consistent and conservative.
struct SspValidationReport {
  std::vector<ConditionVerdict> conditions;  // size 6
  std::vector<std::string> notes;            // recorded oddities, not failures
  bool all_ok() const;
};

SspValidationReport validate_ssp(const NetDocument& doc);

// Agent subnet restricted to the agent's places/transitions (the state
// machine; buffer arcs are dropped).
Net agent_subnet(const Net& net, const AgentDecl& agent);

// Local minimal T-semiflows of one agent, coefficients over the agent
// subnet's transition order.
std::vector<Semiflow> local_t_semiflows(const Net& net, const AgentDecl& agent);

// t_first = p^e.post ∩ ||x||, t_last = .p^e ∩ ||x||; each must be a single
// transition. x is a local semiflow of the agent (agent_subnet coefficient
// order); returns plant transition names.
std::pair<std::string, std::string> first_last_transitions(
    const Net& net, const AgentDecl& agent, const Semiflow& x);

// Series place fusion, series transition fusion, and identical-transition
// merging to fixpoint (classical liveness-preserving rules, applied only
// under their conservative side conditions).
NetDocument preprocess_reductions(const NetDocument& doc);

}  // namespace ssp
