#include "petrisim/net.hpp"

#include <limits>
#include <utility>

#include "petrisim/dsl.hpp"

namespace petrisim {

PetriNet::PetriNet() {
  Place infinite;
  infinite.name = std::string(kInfinitePlace);
  infinite.infinite = true;
  infinite.store.insert(std::string(kInfiniteToken),
                        std::numeric_limits<double>::infinity());
  places_.push_back(std::move(infinite));
}

void PetriNet::add_place(
    const std::string& name,
    const std::vector<std::pair<std::string, double>>& tokens) {
  if (!valid_name(name)) {
    throw Error(ErrorCode::InvalidName, "invalid place name '" + name + "'");
  }
  if (name == kInfinitePlace) {
    throw Error(ErrorCode::InvalidName,
                "'" + name + "' is reserved for the infinite place");
  }
  if (find_place(name) != nullptr) {
    throw Error(ErrorCode::DuplicatePlace,
                "place '" + name + "' already exists");
  }

  Place place;
  place.name = name;
  for (const auto& [token, count] : tokens) {
    if (!valid_name(token)) {
      throw Error(ErrorCode::InvalidName,
                  "invalid token name '" + token + "' in place '" + name +
                      "'");
    }
    if (place.store.has(token)) {
      throw Error(ErrorCode::InvalidName,
                  "token '" + token + "' listed twice in place '" + name +
                      "'");
    }
    if (count < 0) {
      throw Error(ErrorCode::NegativeInitialCount,
                  "initial count of '" + name + "." + token +
                      "' is negative");
    }
    place.store.insert(token, count);
  }
  places_.push_back(std::move(place));
}

void PetriNet::register_function(const std::string& name,
                                 TransferFunction fn) {
  if (functions_.contains(name)) {
    throw Error(ErrorCode::DuplicateFunction,
                "transfer function '" + name + "' already registered");
  }
  functions_.emplace(name, std::move(fn));
}

void PetriNet::add_rule(const std::string& name, const std::string& kind,
                        const std::vector<std::string>& specs) {
  add_rule(name, kind, specs, std::string());
}

void PetriNet::add_rule(const std::string& name, const std::string& kind,
                        const std::vector<std::string>& specs,
                        const std::string& function_name) {
  if (name.empty()) {
    throw Error(ErrorCode::InvalidName, "rule name must not be empty");
  }
  if (find_rule(name) != nullptr) {
    throw Error(ErrorCode::DuplicateRule, "rule '" + name + "' already exists");
  }
  auto parsed_kind = rule_kind_from(kind);
  if (!parsed_kind) {
    throw Error(ErrorCode::UnknownKind, "unknown rule kind '" + kind + "'");
  }

  Rule rule;
  rule.name = name;
  try {
    rule.body = parse_rule_spec(*parsed_kind, specs);
  } catch (const Error& e) {
    throw Error(e.code(), "rule '" + name + "': " + e.what());
  }

  if (auto* fn_rule = std::get_if<FunctionRule>(&rule.body)) {
    if (!function_name.empty()) {
      if (!fn_rule->function.empty() && fn_rule->function != function_name) {
        throw Error(ErrorCode::ArityError,
                    "rule '" + name +
                        "' names a transfer function both in its spec list "
                        "and as an argument");
      }
      fn_rule->function = function_name;
    }
    if (fn_rule->function.empty()) {
      throw Error(ErrorCode::ArityError,
                  "function rule '" + name + "' names no transfer function");
    }
  } else if (!function_name.empty()) {
    throw Error(ErrorCode::ArityError,
                "rule '" + name + "' of kind '" + kind +
                    "' takes no transfer function");
  }

  validate_rule_refs(rule);
  rules_.push_back(std::move(rule));
}

const Place* PetriNet::find_place(std::string_view name) const {
  for (const Place& place : places_) {
    if (place.name == name) return &place;
  }
  return nullptr;
}

Place* PetriNet::find_place(std::string_view name) {
  for (Place& place : places_) {
    if (place.name == name) return &place;
  }
  return nullptr;
}

const Rule* PetriNet::find_rule(std::string_view name) const {
  for (const Rule& rule : rules_) {
    if (rule.name == name) return &rule;
  }
  return nullptr;
}

const TransferFunction* PetriNet::find_function(std::string_view name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

std::size_t PetriNet::user_place_count() const {
  std::size_t count = 0;
  for (const Place& place : places_) {
    if (!place.infinite) ++count;
  }
  return count;
}

double PetriNet::count(std::string_view place, std::string_view token) const {
  return view().count(place, token);
}

void PetriNet::validate_rule_refs(const Rule& rule) const {
  auto check = [this, &rule](const std::string& place,
                             const std::string& token) {
    const Place* found = find_place(place);
    if (found == nullptr || !found->has_token(token)) {
      throw Error(ErrorCode::UnknownPlaceOrToken,
                  "rule '" + rule.name + "' references unknown token '" +
                      place + "." + token + "'");
    }
  };
  for (const TransitionArc* arc : rule_arcs(rule)) {
    check(arc->source_place, arc->source_token);
    check(arc->dest_place, arc->dest_token);
  }
  for (const Condition* cond : rule_conditions(rule)) {
    check(cond->place, cond->token);
  }
}

}  // namespace petrisim
