#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "petrisim/rules.hpp"
#include "petrisim/types.hpp"

namespace petrisim {

/// Computes how many tokens to move along each arc of a function rule.
/// Receives the start-of-step snapshot and must not mutate anything; a
/// negative or non-finite return aborts the simulation.
using TransferFunction = std::function<double(const StateView&)>;

inline constexpr std::string_view kInfinitePlace = "ouroboros";
inline constexpr std::string_view kInfiniteToken = "U";

/// A token-transition net: named places holding token counts, named rules
/// describing movements, and a registry of transfer functions. Places and
/// rules iterate in registration order, which fixes both report columns and
/// the order in which overlapping withdrawals are clamped.
///
/// A net is a single-owner value: mutation and simulation happen from one
/// thread at a time, and copies are fully independent.
class PetriNet {
 public:
  /// A fresh net holds only the infinite `ouroboros` place with its `U`
  /// token, usable as an inexhaustible source or bottomless sink.
  PetriNet();

  /// Registers a place with its initial token counts.
  void add_place(const std::string& name,
                 const std::vector<std::pair<std::string, double>>& tokens);

  /// Registers a transfer function for use by function rules.
  void register_function(const std::string& name, TransferFunction fn);

  /// Parses `specs` under the grammar of `kind` and registers the rule.
  /// Registration is atomic: on any error the net is unchanged. For
  /// function rules the transfer function name may appear inside the spec
  /// list; the overload below passes it separately.
  void add_rule(const std::string& name, const std::string& kind,
                const std::vector<std::string>& specs);
  void add_rule(const std::string& name, const std::string& kind,
                const std::vector<std::string>& specs,
                const std::string& function_name);

  const std::vector<Place>& places() const { return places_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::vector<Rule>& rules() { return rules_; }

  const Place* find_place(std::string_view name) const;
  Place* find_place(std::string_view name);
  const Rule* find_rule(std::string_view name) const;
  const TransferFunction* find_function(std::string_view name) const;

  /// Number of places excluding the implicit infinite one.
  std::size_t user_place_count() const;
  std::size_t rule_count() const { return rules_.size(); }

  double count(std::string_view place, std::string_view token) const;
  StateView view() const { return StateView(places_); }
  Frame frame() const { return Frame{clock_, places_}; }

  /// Simulation clock state. Both persist across simulate calls, so a
  /// second run continues where the first stopped.
  long long step_index() const { return step_index_; }
  double clock() const { return clock_; }
  void set_step_index(long long value) { step_index_ = value; }
  void set_clock(double value) { clock_ = value; }

 private:
  void validate_rule_refs(const Rule& rule) const;

  std::vector<Place> places_;
  std::vector<Rule> rules_;
  std::map<std::string, TransferFunction, std::less<>> functions_;
  long long step_index_ = 0;
  double clock_ = 0;
};

}  // namespace petrisim
