#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "petrisim/rules.hpp"
#include "petrisim/types.hpp"

namespace petrisim {

// The textual rule language. One spec string describes one arc plus the
// kind-specific parameters, with fields separated by ';':
//
//   step      "src.tok -> dst.tok; amount"
//   ratio     "src.tok -> dst.tok; ratio; place.tok OP limit; flush_target"
//   delay     "src.tok -> dst.tok; amount; interval"
//   incubate  "timer; src.tok -> dst.tok; guard [; guard ...]"   (single spec)
//   function  list of: arc strings, optionally the transfer function name,
//             then guard strings
//
// Whitespace, including backslash line continuations, is insignificant
// around names, separators and operators. `amount`, `ratio`, `flush_target`
// and condition limits are decimal reals; `interval` and `timer` must be
// positive integers.

/// Parses `"src.tok -> dst.tok"`. Rejects trailing input.
TransitionArc parse_arc(std::string_view text);

/// Parses `"place.tok OP limit"` with OP one of == != < <= > >=.
Condition parse_condition(std::string_view text);

/// Parses a full spec list under the grammar of `kind`. For function rules
/// the returned FunctionRule carries the embedded transfer function name,
/// or an empty string when the list contains none.
RuleBody parse_rule_spec(RuleKind kind, const std::vector<std::string>& specs);

/// Evaluates a condition against a state snapshot. Comparisons are exact;
/// the engine keeps exhausted counts at exactly 0 so `== 0` guards work.
bool eval_condition(const Condition& cond, const StateView& state);

std::string format_arc(const TransitionArc& arc);
std::string format_condition(const Condition& cond);

/// Renders a rule back into spec strings that re-parse to the same rule.
std::vector<std::string> format_rule_specs(const Rule& rule);

}  // namespace petrisim
