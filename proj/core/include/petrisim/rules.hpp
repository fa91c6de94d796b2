#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "petrisim/types.hpp"

namespace petrisim {

enum class RuleKind { Step, Ratio, Delay, Incubate, Function };

const char* to_string(RuleKind kind);
std::optional<RuleKind> rule_kind_from(std::string_view text);

/// Moves a fixed amount every time step.
struct StepArc {
  TransitionArc arc;
  double amount = 0;

  bool operator==(const StepArc&) const = default;
};

/// Moves `ratio` of the source count per step until `stop` holds on the
/// start-of-step snapshot; then flushes the source down to `flush_target`.
struct RatioArc {
  TransitionArc arc;
  double ratio = 0;
  Condition stop;
  double flush_target = 0;

  bool operator==(const RatioArc&) const = default;
};

/// Moves a fixed amount on every `interval`-th step (step indices are
/// 1-based, so the first firing lands on step == interval).
struct DelayArc {
  TransitionArc arc;
  double amount = 0;
  long long interval = 1;

  bool operator==(const DelayArc&) const = default;
};

struct StepRule {
  std::vector<StepArc> arcs;

  bool operator==(const StepRule&) const = default;
};

struct RatioRule {
  std::vector<RatioArc> arcs;

  bool operator==(const RatioRule&) const = default;
};

struct DelayRule {
  std::vector<DelayArc> arcs;

  bool operator==(const DelayRule&) const = default;
};

/// Counts consecutive steps on which every guard holds; on the
/// `timer_threshold`-th such step it moves the entire snapshot count of each
/// arc's source token and starts over. Any guard failure resets the count.
struct IncubateRule {
  long long timer_threshold = 1;
  std::vector<TransitionArc> arcs;
  std::vector<Condition> guards;
  long long elapsed = 0;

  bool operator==(const IncubateRule&) const = default;
};

/// When every guard holds, moves the amount returned by the named transfer
/// function along every arc of the rule.
struct FunctionRule {
  std::string function;
  std::vector<TransitionArc> arcs;
  std::vector<Condition> guards;

  bool operator==(const FunctionRule&) const = default;
};

using RuleBody =
    std::variant<StepRule, RatioRule, DelayRule, IncubateRule, FunctionRule>;

struct Rule {
  std::string name;
  RuleBody body;

  RuleKind kind() const;

  bool operator==(const Rule&) const = default;
};

/// All arcs of a rule in declaration order, regardless of kind.
std::vector<const TransitionArc*> rule_arcs(const Rule& rule);

/// All conditions referenced by a rule (ratio stops, incubate/function
/// guards).
std::vector<const Condition*> rule_conditions(const Rule& rule);

}  // namespace petrisim
