#pragma once

#include "ssp/ssp.hpp"

namespace ssp {

// One local-T-semiflow abstraction inside the control net:
// first_ctrl --> px --> last_ctrl, with pN and pb arcs around it.
struct ControlSequence {
  std::string semiflow_name;  // "x4", numbering continues after the globals
  std::string agent;
  std::string first_ctrl;  // control transition id, labeled plant_first
  std::string px;          // place representing an active round of the semiflow
  std::string last_ctrl;   // control transition id, labeled plant_last
  std::string plant_first;
  std::string plant_last;
  // Plant transition name -> coefficient in the local semiflow.
  std::vector<std::pair<std::string, long long>> plant_support;
};

struct ControlNet {
  Net net;
  Marking m0;  // pN places 1, everything else 0
  std::map<std::string, std::string> buffer_place;  // plant buffer -> pb id
  std::map<std::string, std::string> agent_place;   // agent name -> pN id
  std::vector<ControlSequence> sequences;
  std::vector<Semiflow> plant_globals;  // minimal T-semiflows of the plant

  const ControlSequence* sequence_of(const std::string& semiflow_name) const;
};

// Algorithm-1 synthesis from a validated SSP document.
ControlNet build_control_pn(const NetDocument& doc);

struct SimplifiedControlNet {
  Net net;     // pb places and one fused transition per sequence
  Marking m0;  // all zero
  std::map<std::string, std::string> fused_of;  // semiflow name -> transition id
  std::vector<int> place_component;
  std::vector<int> trans_component;
  int n_components = 0;
};

// Simplification: fuse each first->px->last sequence into one transition and
// drop the pN places after verifying they are implicit on the fused columns.
SimplifiedControlNet simplify_control_pn(const ControlNet& cn);

struct SubnetClass {
  bool cf = false;  // every place has at most one output transition
  bool jf = false;  // every transition has at most one input place
  bool structurally_live = false;  // cf or jf
};

std::vector<SubnetClass> classify_subnets(const SimplifiedControlNet& scn);
bool structural_verdict(const std::vector<SubnetClass>& classes);

// Buffer marking allowing one firing of every global plant T-semiflow: each
// pb gets the tokens those rounds produce into its buffer; pN places get 1.
Marking constructive_live_marking(const ControlNet& cn, const NetDocument& doc);

// Control marking whose pb places copy the plant's current buffer marking
// (pN = 1, px = 0, enforcement buffers keep cn.m0).
Marking control_marking_from_plant(const ControlNet& cn, const NetDocument& doc,
                                   const Marking& plant_m);

}  // namespace ssp
