#include "petrisim/types.hpp"

#include <cctype>
#include <limits>

namespace petrisim {

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

bool compare(CompareOp op, double lhs, double rhs) {
  switch (op) {
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Ne: return lhs != rhs;
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Gt: return lhs > rhs;
    case CompareOp::Ge: return lhs >= rhs;
  }
  return false;
}

bool TokenStore::has(std::string_view token) const {
  return find(token).has_value();
}

std::optional<double> TokenStore::find(std::string_view token) const {
  for (const auto& [name, count] : entries_) {
    if (name == token) return count;
  }
  return std::nullopt;
}

void TokenStore::insert(std::string token, double count) {
  entries_.emplace_back(std::move(token), count);
}

void TokenStore::set(std::string_view token, double value) {
  for (auto& [name, count] : entries_) {
    if (name == token) {
      count = value;
      return;
    }
  }
  throw Error(ErrorCode::UnknownPlaceOrToken,
              "no token named '" + std::string(token) + "'");
}

double Place::count(std::string_view token) const {
  if (infinite) return std::numeric_limits<double>::infinity();
  auto found = store.find(token);
  if (!found) {
    throw Error(ErrorCode::UnknownPlaceOrToken,
                "place '" + name + "' has no token '" + std::string(token) +
                    "'");
  }
  return *found;
}

bool Place::has_token(std::string_view token) const {
  return infinite || store.has(token);
}

double StateView::count(std::string_view place, std::string_view token) const {
  const Place* found = find_place(place);
  if (!found) {
    throw Error(ErrorCode::UnknownPlaceOrToken,
                "no place named '" + std::string(place) + "'");
  }
  return found->count(token);
}

bool StateView::has(std::string_view place, std::string_view token) const {
  const Place* found = find_place(place);
  return found != nullptr && found->has_token(token);
}

const Place* StateView::find_place(std::string_view name) const {
  for (const Place& place : *places_) {
    if (place.name == name) return &place;
  }
  return nullptr;
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '.' || c == ';' || c == '\\') return false;
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '-' && i + 1 < name.size() && name[i + 1] == '>') return false;
  }
  return true;
}

}  // namespace petrisim
