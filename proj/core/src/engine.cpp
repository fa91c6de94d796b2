#include "petrisim/engine.hpp"

#include <cmath>
#include <string>

#include "petrisim/dsl.hpp"

namespace petrisim {

namespace {

std::string at_step(long long step_index) {
  return " at step " + std::to_string(step_index);
}

void check_finite(double amount, const std::string& rule_name,
                  long long step_index) {
  if (!std::isfinite(amount)) {
    throw Error(ErrorCode::NonFiniteTransfer,
                "rule '" + rule_name + "' computed a non-finite transfer" +
                    at_step(step_index) +
                    " (is its source the infinite place?)");
  }
}

bool guards_hold(const std::vector<Condition>& guards,
                 const StateView& snapshot) {
  for (const Condition& guard : guards) {
    if (!eval_condition(guard, snapshot)) return false;
  }
  return true;
}

void validate_config(double length, double timestep,
                     long long report_frequency) {
  if (!(length > 0) || !std::isfinite(length)) {
    throw Error(ErrorCode::InvalidConfig,
                "simulation length must be a positive real");
  }
  if (!(timestep > 0) || !std::isfinite(timestep)) {
    throw Error(ErrorCode::InvalidConfig, "timestep must be a positive real");
  }
  if (report_frequency < 1) {
    throw Error(ErrorCode::InvalidConfig,
                "report frequency must be a positive integer");
  }
}

void validate_functions(const PetriNet& net) {
  for (const Rule& rule : net.rules()) {
    const auto* body = std::get_if<FunctionRule>(&rule.body);
    if (body != nullptr && net.find_function(body->function) == nullptr) {
      throw Error(ErrorCode::UnresolvedFunction,
                  "rule '" + rule.name +
                      "' references unregistered transfer function '" +
                      body->function + "'");
    }
  }
}

void run_one_step(PetriNet& net) {
  net.set_step_index(net.step_index() + 1);
  StateView snapshot = net.view();
  StepPlan plan = compute_step_plan(net, snapshot, net.step_index());
  apply_plan(net, plan);
}

}  // namespace

long long step_count(double length, double timestep) {
  return static_cast<long long>(std::ceil(length / timestep));
}

StepPlan compute_step_plan(PetriNet& net, const StateView& snapshot,
                           long long step_index) {
  if (step_index < 1) {
    throw Error(ErrorCode::InvalidConfig, "step indices are 1-based");
  }
  StepPlan plan;
  for (Rule& rule : net.rules()) {
    std::visit(
        [&](auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, StepRule>) {
            for (const StepArc& entry : body.arcs) {
              plan.items.push_back({entry.arc, entry.amount});
            }
          } else if constexpr (std::is_same_v<T, RatioRule>) {
            for (const RatioArc& entry : body.arcs) {
              double have = snapshot.count(entry.arc.source_place,
                                           entry.arc.source_token);
              double amount =
                  eval_condition(entry.stop, snapshot)
                      ? std::max(have - entry.flush_target, 0.0)
                      : entry.ratio * have;
              check_finite(amount, rule.name, step_index);
              plan.items.push_back({entry.arc, amount});
            }
          } else if constexpr (std::is_same_v<T, DelayRule>) {
            for (const DelayArc& entry : body.arcs) {
              double amount =
                  step_index % entry.interval == 0 ? entry.amount : 0.0;
              plan.items.push_back({entry.arc, amount});
            }
          } else if constexpr (std::is_same_v<T, IncubateRule>) {
            bool fire = false;
            if (guards_hold(body.guards, snapshot)) {
              if (++body.elapsed >= body.timer_threshold) {
                fire = true;
                body.elapsed = 0;
              }
            } else {
              body.elapsed = 0;
            }
            for (const TransitionArc& arc : body.arcs) {
              double amount =
                  fire ? snapshot.count(arc.source_place, arc.source_token)
                       : 0.0;
              if (fire) check_finite(amount, rule.name, step_index);
              plan.items.push_back({arc, amount});
            }
          } else if constexpr (std::is_same_v<T, FunctionRule>) {
            double amount = 0;
            if (guards_hold(body.guards, snapshot)) {
              const TransferFunction* fn = net.find_function(body.function);
              if (fn == nullptr) {
                throw Error(ErrorCode::UnresolvedFunction,
                            "rule '" + rule.name +
                                "' references unregistered transfer "
                                "function '" +
                                body.function + "'" + at_step(step_index));
              }
              amount = (*fn)(snapshot);
              if (std::isnan(amount) || std::isinf(amount)) {
                throw Error(ErrorCode::NonFiniteTransfer,
                            "rule '" + rule.name +
                                "' returned a non-finite transfer amount" +
                                at_step(step_index));
              }
              if (amount < 0) {
                throw Error(ErrorCode::NegativeTransfer,
                            "rule '" + rule.name +
                                "' returned negative transfer amount " +
                                format_double(amount) + at_step(step_index));
              }
            }
            for (const TransitionArc& arc : body.arcs) {
              plan.items.push_back({arc, amount});
            }
          }
        },
        rule.body);
  }
  return plan;
}

void apply_plan(PetriNet& net, const StepPlan& plan) {
  for (const StepPlan::Item& item : plan.items) {
    Place* source = net.find_place(item.arc.source_place);
    Place* dest = net.find_place(item.arc.dest_place);
    if (source == nullptr || dest == nullptr) {
      throw Error(ErrorCode::UnknownPlaceOrToken,
                  "plan references unknown place '" +
                      (source == nullptr ? item.arc.source_place
                                         : item.arc.dest_place) +
                      "'");
    }
    double moved = item.amount;
    if (!source->infinite) {
      auto have = source->store.find(item.arc.source_token);
      if (!have) {
        throw Error(ErrorCode::UnknownPlaceOrToken,
                    "plan references unknown token '" +
                        item.arc.source_place + "." + item.arc.source_token +
                        "'");
      }
      // Clamp to what is actually left; exhaustion snaps to exactly 0 so
      // `== 0` guards stay reachable.
      if (item.amount >= *have) {
        moved = *have;
        source->store.set(item.arc.source_token, 0.0);
      } else {
        source->store.set(item.arc.source_token, *have - item.amount);
      }
    }
    if (!dest->infinite) {
      auto have = dest->store.find(item.arc.dest_token);
      if (!have) {
        throw Error(ErrorCode::UnknownPlaceOrToken,
                    "plan references unknown token '" + item.arc.dest_place +
                        "." + item.arc.dest_token + "'");
      }
      dest->store.set(item.arc.dest_token, *have + moved);
    }
  }
}

std::vector<SimulationRecord> simulate(PetriNet& net, double length,
                                       double timestep,
                                       long long report_frequency) {
  validate_config(length, timestep, report_frequency);
  validate_functions(net);
  long long steps = step_count(length, timestep);
  double start_clock = net.clock();

  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(1 + steps / report_frequency));
  frames.push_back(net.frame());
  for (long long k = 1; k <= steps; ++k) {
    run_one_step(net);
    net.set_clock(start_clock + static_cast<double>(k) * timestep);
    if (k % report_frequency == 0) frames.push_back(net.frame());
  }
  return report_tokens(frames);
}

std::vector<SimulationRecord> simulate(PetriNet& net,
                                       const SimulationConfig& config) {
  return simulate(net, config.length, config.timestep,
                  config.report_frequency);
}

SimulationStream::SimulationStream(PetriNet& net, double length,
                                   double timestep)
    : net_(&net), timestep_(timestep), start_clock_(net.clock()) {
  validate_config(length, timestep, 1);
  validate_functions(net);
  total_ = step_count(length, timestep);
}

std::optional<Frame> SimulationStream::next() {
  if (done_ >= total_) return std::nullopt;
  ++done_;
  run_one_step(*net_);
  net_->set_clock(start_clock_ + static_cast<double>(done_) * timestep_);
  return net_->frame();
}

SimulationStream simulate_stream(PetriNet& net, double length,
                                 double timestep) {
  return SimulationStream(net, length, timestep);
}

}  // namespace petrisim
