#include "petrisim/rules.hpp"

namespace petrisim {

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Step: return "step";
    case RuleKind::Ratio: return "ratio";
    case RuleKind::Delay: return "delay";
    case RuleKind::Incubate: return "incubate";
    case RuleKind::Function: return "function";
  }
  return "?";
}

std::optional<RuleKind> rule_kind_from(std::string_view text) {
  if (text == "step") return RuleKind::Step;
  if (text == "ratio") return RuleKind::Ratio;
  if (text == "delay") return RuleKind::Delay;
  if (text == "incubate") return RuleKind::Incubate;
  if (text == "function") return RuleKind::Function;
  return std::nullopt;
}

RuleKind Rule::kind() const {
  struct Visitor {
    RuleKind operator()(const StepRule&) const { return RuleKind::Step; }
    RuleKind operator()(const RatioRule&) const { return RuleKind::Ratio; }
    RuleKind operator()(const DelayRule&) const { return RuleKind::Delay; }
    RuleKind operator()(const IncubateRule&) const {
      return RuleKind::Incubate;
    }
    RuleKind operator()(const FunctionRule&) const {
      return RuleKind::Function;
    }
  };
  return std::visit(Visitor{}, body);
}

std::vector<const TransitionArc*> rule_arcs(const Rule& rule) {
  std::vector<const TransitionArc*> arcs;
  std::visit(
      [&arcs](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, StepRule> ||
                      std::is_same_v<T, RatioRule> ||
                      std::is_same_v<T, DelayRule>) {
          for (const auto& entry : body.arcs) arcs.push_back(&entry.arc);
        } else {
          for (const auto& arc : body.arcs) arcs.push_back(&arc);
        }
      },
      rule.body);
  return arcs;
}

std::vector<const Condition*> rule_conditions(const Rule& rule) {
  std::vector<const Condition*> conditions;
  std::visit(
      [&conditions](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, RatioRule>) {
          for (const auto& entry : body.arcs)
            conditions.push_back(&entry.stop);
        } else if constexpr (std::is_same_v<T, IncubateRule> ||
                             std::is_same_v<T, FunctionRule>) {
          for (const auto& guard : body.guards) conditions.push_back(&guard);
        }
      },
      rule.body);
  return conditions;
}

}  // namespace petrisim
