#pragma once

#include <optional>
#include <vector>

#include "petrisim/net.hpp"
#include "petrisim/report.hpp"
#include "petrisim/rules.hpp"
#include "petrisim/types.hpp"

namespace petrisim {

// Time-step execution. Every step runs in two phases: all rule amounts are
// computed from the start-of-step snapshot, then the resulting deltas are
// applied sequentially in rule registration order. Withdrawals clamp to
// whatever the source still holds mid-application, and a count that clamps
// to exhaustion is set to exactly 0.

/// Planned token movements for one step: one (arc, amount) entry per rule
/// arc, rules in registration order, arcs in declaration order. Amounts are
/// finite and non-negative; idle arcs carry 0.
struct StepPlan {
  struct Item {
    TransitionArc arc;
    double amount = 0;
  };
  std::vector<Item> items;
};

struct SimulationConfig {
  double length = 0;
  double timestep = 1;
  long long report_frequency = 1;
};

/// Number of steps a config runs: ceil(length / timestep).
long long step_count(double length, double timestep);

/// Computes the plan for step `step_index` (1-based) from `snapshot`.
/// Advances incubate timers as a side effect. Throws UnresolvedFunction,
/// NegativeTransfer or NonFiniteTransfer with the rule name attached.
StepPlan compute_step_plan(PetriNet& net, const StateView& snapshot,
                           long long step_index);

/// Applies deltas in plan order. Clamping absorbs over-draw; an infinite
/// source is never clamped and an infinite destination discards deposits.
void apply_plan(PetriNet& net, const StepPlan& plan);

/// Runs ceil(length / timestep) steps and returns the stored rows: the
/// state before any step, then the state after every `report_frequency`-th
/// step. The clock after step k reads start + k * timestep.
std::vector<SimulationRecord> simulate(PetriNet& net, double length,
                                       double timestep,
                                       long long report_frequency);
std::vector<SimulationRecord> simulate(PetriNet& net,
                                       const SimulationConfig& config);

/// Pull-based counterpart of `simulate` that keeps nothing but the frame it
/// just produced. Each next() applies one step and yields the state after
/// it; abandoning the stream leaves the net exactly as many steps ahead as
/// were consumed.
class SimulationStream {
 public:
  SimulationStream(PetriNet& net, double length, double timestep);

  std::optional<Frame> next();
  long long remaining() const { return total_ - done_; }

 private:
  PetriNet* net_;
  long long total_ = 0;
  long long done_ = 0;
  double timestep_ = 1;
  double start_clock_ = 0;
};

SimulationStream simulate_stream(PetriNet& net, double length,
                                 double timestep);

}  // namespace petrisim
