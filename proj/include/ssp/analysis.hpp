#pragma once

#include "ssp/supervisor.hpp"

namespace ssp {

struct Siphon {
  std::vector<int> places;  // sorted place indices
  bool is_minimal = true;
  bool is_bad = false;  // contains no trap
};

inline constexpr std::size_t kSiphonCandidateCap = 50000;

// All minimal siphons of an ordinary net (refuses non-ordinary nets), each
// tagged bad when it contains no trap.
std::vector<Siphon> minimal_siphons(const Net& net,
                                    std::size_t cap = kSiphonCandidateCap);

bool is_siphon(const Net& net, const std::vector<int>& S);
bool is_trap(const Net& net, const std::vector<int>& S);
// Maximal trap contained in S (possibly empty).
std::vector<int> maximal_trap_within(const Net& net, const std::vector<int>& S);

struct MonitorInfo {
  std::string place;
  std::vector<int> siphon;  // indices into the net the monitor was added to
  std::vector<std::string> siphon_names;  // same siphon, by place id
  std::vector<std::string> fed_agents;  // agents of the monitor's outputs
  bool privacy_violation = false;       // feeds two or more agents
  bool redundant = false;  // siphon contains a trap; monitor never constrains
};

// Monitor place enforcing sum over S >= 1 (incidence column = summed siphon
// rows of C, initial marking = siphon token sum - 1). Requires the siphon to
// be initially marked; a trap-containing siphon is accepted but its monitor
// is flagged redundant.
std::pair<NetDocument, MonitorInfo> add_monitor(const NetDocument& doc,
                                                const std::vector<int>& S);

struct BaselineResult {
  NetDocument controlled;
  Census census;
  std::vector<MonitorInfo> monitors;
  int iterations = 0;
};

// Siphon-monitor baseline: iteratively add monitors for every minimal bad siphon
// that can become empty, until none remain; then run the census.
BaselineResult monitor_baseline(const NetDocument& doc,
                                std::size_t node_budget = kDefaultNodeBudget);

struct PipelineCensus {
  Census plant;
  bool monitors_applicable = false;
  std::string monitors_note;  // refusal reason when not applicable
  Census monitors;
  std::vector<MonitorInfo> monitor_infos;
  Census composed;
  SynthesisOutcome synthesis;
};

// Three-row census table: plant census, monitor
// baseline census, composed supervised-net census.
PipelineCensus full_pipeline_census(const NetDocument& doc,
                                    std::size_t node_budget = kDefaultNodeBudget);

Report pipeline_report(const NetDocument& doc, const PipelineCensus& pc);

}  // namespace ssp
