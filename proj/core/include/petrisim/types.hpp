#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "petrisim/errors.hpp"

namespace petrisim {

/// Comparison operators allowed in rule conditions and expressions.
enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(CompareOp op);

/// Exact floating comparison; the engine snaps exhausted counts to 0 so
/// equality checks against 0 behave as models expect.
bool compare(CompareOp op, double lhs, double rhs);

/// Token counts of one place. Entries keep insertion order so report
/// columns are deterministic.
class TokenStore {
 public:
  using Entry = std::pair<std::string, double>;

  bool has(std::string_view token) const;
  std::optional<double> find(std::string_view token) const;

  /// Registers a new token. The token must not already exist.
  void insert(std::string token, double count);

  /// Overwrites the count of an existing token.
  void set(std::string_view token, double value);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool operator==(const TokenStore&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// A named container of tokens. At most one place per net is infinite; it
/// satisfies any withdrawal and swallows any deposit, always reporting the
/// same sentinel count.
struct Place {
  std::string name;
  TokenStore store;
  bool infinite = false;

  /// Count of `token`; an infinite place reports +inf for every token.
  double count(std::string_view token) const;
  bool has_token(std::string_view token) const;

  bool operator==(const Place&) const = default;
};

/// One token movement channel: `source_place.source_token ->
/// dest_place.dest_token`. Source and destination token names may differ,
/// which converts the token type in flight.
struct TransitionArc {
  std::string source_place;
  std::string source_token;
  std::string dest_place;
  std::string dest_token;

  bool operator==(const TransitionArc&) const = default;
};

/// A comparison of one token count against a fixed threshold.
struct Condition {
  std::string place;
  std::string token;
  CompareOp op = CompareOp::Eq;
  double threshold = 0;

  bool operator==(const Condition&) const = default;
};

/// Read-only view of a set of places, handed to transfer functions and
/// condition evaluation. Does not own the places.
class StateView {
 public:
  explicit StateView(const std::vector<Place>& places) : places_(&places) {}

  /// Count of `place`.`token`; throws UnknownPlaceOrToken when missing.
  double count(std::string_view place, std::string_view token) const;
  bool has(std::string_view place, std::string_view token) const;
  const Place* find_place(std::string_view name) const;
  const std::vector<Place>& places() const { return *places_; }

 private:
  const std::vector<Place>* places_;
};

/// Materialized state of a net at one point in simulated time.
struct Frame {
  double clock = 0;
  std::vector<Place> places;

  StateView view() const { return StateView(places); }
};

/// True when `name` is usable as a place or token name: non-empty, no
/// whitespace, no '.', no ';', no backslash, and no "->" sequence.
bool valid_name(std::string_view name);

}  // namespace petrisim
