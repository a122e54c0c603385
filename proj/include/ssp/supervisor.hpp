#pragma once

#include <cstdint>

#include "ssp/enforce.hpp"

namespace ssp {

// Per plant transition: the control transitions carrying its name as label
// and the px places of local semiflows whose support contains it.
struct GuardTable {
  std::vector<std::vector<int>> labeled;    // [plant t] -> control trans ids
  std::vector<std::vector<int>> member_px;  // [plant t] -> control place ids
};

GuardTable build_guard_table(const NetDocument& doc, const ControlNet& cn);

// Guard of t: some control transition labeled t is enabled, or some px place
// of a semiflow containing t has marking exactly one.
bool guard_true(const GuardTable& gt, const Net& cnet, const Marking& mc,
                int plant_t);

struct TraceStep {
  int index = 0;
  std::string plant_trans;
  std::string ctrl_trans;  // empty when no control transition fired
};

struct SupervisorState {
  Marking ms;  // plant marking
  Marking mc;  // control marking
  std::vector<TraceStep> trace;
};

enum class Policy { Random, Scripted, Exhaustive };

struct RunResult {
  SupervisorState state;
  std::string verdict;  // "completed", "blocked", "terminal"
  long long blocked_index = -1;  // scripted mode: first guard/enabledness miss
  Census census;                 // exhaustive mode only
  bool exhaustive = false;
};

// One supervised step: fires plant_t (must be plant-enabled with a true guard),
// then one enabled identically-labeled control transition when any exists
// (chosen by ctrl_choice among the enabled ones).
void control_step(const NetDocument& doc, const ControlNet& cn,
                  const GuardTable& gt, SupervisorState& st, int plant_t,
                  int ctrl_choice = 0);

// Runs the supervised system. Checks the liveness hypothesis first: the
// control net with mc0 must be live. Scripted mode replays `script` and
// reports the first blocked index; random mode draws uniformly from the
// guard-filtered enabled set with the given seed; exhaustive mode explores
// all joint (ms, mc) states and control choices and returns their census.
RunResult run(const NetDocument& doc, const ControlNet& cn, const Marking& mc0,
              Policy policy, std::uint64_t seed, std::size_t steps,
              const std::vector<std::string>& script,
              std::size_t node_budget = kDefaultNodeBudget);

// Synchronous composition: one net whose behavior equals the supervised
// system. Labeled plant transitions are fused with every identically labeled
// control transition; interior transitions get a self-loop on their
// semiflow's px place; plant buffers are identified with the pb places and
// carry the control-side arc structure.
NetDocument compose(const NetDocument& doc, const ControlNet& cn);

}  // namespace ssp
