#include "petrisim/model_file.hpp"

#include <utility>

#include <json.hpp>

#include "petrisim/expression.hpp"

namespace petrisim {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad_document(const std::string& message) {
  throw Error(ErrorCode::DocumentSyntaxError, "model document: " + message);
}

const json* get_member(const json& object, const char* key) {
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

std::string require_string(const json& object, const char* key,
                           const std::string& context) {
  const json* member = get_member(object, key);
  if (member == nullptr || !member->is_string()) {
    bad_document(context + ": missing string field \"" + key + "\"");
  }
  return member->get<std::string>();
}

double require_number(const json& value, const std::string& context) {
  if (!value.is_number()) bad_document(context + ": expected a number");
  return value.get<double>();
}

const json* optional_array(const json& object, const char* key) {
  const json* member = get_member(object, key);
  if (member == nullptr) return nullptr;
  if (!member->is_array()) {
    bad_document(std::string("\"") + key + "\" must be an array");
  }
  return member;
}

ModelDocument document_from_json(const json& doc) {
  if (!doc.is_object()) bad_document("top level must be an object");
  ModelDocument out;
  if (const json* name = get_member(doc, "model")) {
    if (!name->is_string()) bad_document("\"model\" must be a string");
    out.name = name->get<std::string>();
  }

  if (const json* places = optional_array(doc, "places")) {
    std::size_t index = 0;
    for (const json& entry : *places) {
      std::string context = "places[" + std::to_string(index++) + "]";
      if (!entry.is_object()) bad_document(context + ": expected an object");
      PlaceDecl place;
      place.name = require_string(entry, "name", context);
      if (const json* tokens = get_member(entry, "tokens")) {
        if (!tokens->is_object()) {
          bad_document(context + ".tokens: expected an object");
        }
        for (auto it = tokens->begin(); it != tokens->end(); ++it) {
          place.tokens.emplace_back(
              it.key(),
              require_number(it.value(), context + ".tokens." + it.key()));
        }
      }
      out.places.push_back(std::move(place));
    }
  }

  if (const json* functions = optional_array(doc, "functions")) {
    std::size_t index = 0;
    for (const json& entry : *functions) {
      std::string context = "functions[" + std::to_string(index++) + "]";
      if (!entry.is_object()) bad_document(context + ": expected an object");
      FunctionDecl fn;
      fn.name = require_string(entry, "name", context);
      fn.expression = require_string(entry, "expression", context);
      out.functions.push_back(std::move(fn));
    }
  }

  if (const json* rules = optional_array(doc, "rules")) {
    std::size_t index = 0;
    for (const json& entry : *rules) {
      std::string context = "rules[" + std::to_string(index++) + "]";
      if (!entry.is_object()) bad_document(context + ": expected an object");
      RuleDecl rule;
      rule.name = require_string(entry, "name", context);
      rule.kind = require_string(entry, "kind", context);
      if (const json* specs = get_member(entry, "specs")) {
        if (!specs->is_array()) {
          bad_document(context + ".specs: expected an array of strings");
        }
        for (const json& spec : *specs) {
          if (!spec.is_string()) {
            bad_document(context + ".specs: expected an array of strings");
          }
          rule.specs.push_back(spec.get<std::string>());
        }
      }
      if (const json* function = get_member(entry, "function")) {
        if (!function->is_string()) {
          bad_document(context + ".function: expected a string");
        }
        rule.function = function->get<std::string>();
      }
      out.rules.push_back(std::move(rule));
    }
  }

  if (const json* defaults = get_member(doc, "defaults")) {
    if (!defaults->is_object()) bad_document("\"defaults\" must be an object");
    if (const json* length = get_member(*defaults, "length")) {
      out.defaults.length = require_number(*length, "defaults.length");
      if (!(*out.defaults.length > 0)) {
        bad_document("defaults.length must be positive");
      }
    }
    if (const json* timestep = get_member(*defaults, "timestep")) {
      out.defaults.timestep = require_number(*timestep, "defaults.timestep");
      if (!(*out.defaults.timestep > 0)) {
        bad_document("defaults.timestep must be positive");
      }
    }
    if (const json* frequency = get_member(*defaults, "report_frequency")) {
      if (!frequency->is_number_integer() ||
          frequency->get<long long>() < 1) {
        bad_document("defaults.report_frequency must be a positive integer");
      }
      out.defaults.report_frequency = frequency->get<long long>();
    }
  }
  return out;
}

}  // namespace

ModelDocument parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::DocumentSyntaxError,
                std::string("model document: ") + e.what());
  }
  return document_from_json(doc);
}

std::string serialize_model(const ModelDocument& doc) {
  json out = json::object();
  out["model"] = doc.name;
  json places = json::array();
  for (const PlaceDecl& place : doc.places) {
    json entry = json::object();
    entry["name"] = place.name;
    json tokens = json::object();
    for (const auto& [token, count] : place.tokens) tokens[token] = count;
    entry["tokens"] = std::move(tokens);
    places.push_back(std::move(entry));
  }
  out["places"] = std::move(places);
  if (!doc.functions.empty()) {
    json functions = json::array();
    for (const FunctionDecl& fn : doc.functions) {
      functions.push_back({{"name", fn.name}, {"expression", fn.expression}});
    }
    out["functions"] = std::move(functions);
  }
  json rules = json::array();
  for (const RuleDecl& rule : doc.rules) {
    json entry = json::object();
    entry["name"] = rule.name;
    entry["kind"] = rule.kind;
    entry["specs"] = rule.specs;
    if (!rule.function.empty()) entry["function"] = rule.function;
    rules.push_back(std::move(entry));
  }
  out["rules"] = std::move(rules);
  json defaults = json::object();
  if (doc.defaults.length) defaults["length"] = *doc.defaults.length;
  if (doc.defaults.timestep) defaults["timestep"] = *doc.defaults.timestep;
  if (doc.defaults.report_frequency) {
    defaults["report_frequency"] = *doc.defaults.report_frequency;
  }
  if (!defaults.empty()) out["defaults"] = std::move(defaults);
  return out.dump(2) + "\n";
}

PetriNet instantiate_model(const ModelDocument& doc) {
  PetriNet net;
  for (const PlaceDecl& place : doc.places) {
    net.add_place(place.name, place.tokens);
  }

  for (const FunctionDecl& fn : doc.functions) {
    ExprPtr expr;
    try {
      expr = parse_expression(fn.expression);
    } catch (const Error& e) {
      throw Error(e.code(), "function '" + fn.name + "': " + e.what());
    }
    for (const auto& [place, token] : expression_refs(*expr)) {
      const Place* found = net.find_place(place);
      if (found == nullptr || !found->has_token(token)) {
        throw Error(ErrorCode::UnknownPlaceOrToken,
                    "function '" + fn.name + "' references unknown token '" +
                        place + "." + token + "'");
      }
    }
    net.register_function(fn.name, [expr](const StateView& state) {
      return eval_expression(*expr, state);
    });
  }

  for (const RuleDecl& rule : doc.rules) {
    net.add_rule(rule.name, rule.kind, rule.specs, rule.function);
  }

  // Function rules must resolve at load, not mid-run.
  for (const Rule& rule : net.rules()) {
    const auto* body = std::get_if<FunctionRule>(&rule.body);
    if (body != nullptr && net.find_function(body->function) == nullptr) {
      throw Error(ErrorCode::UnresolvedFunction,
                  "rule '" + rule.name +
                      "' references undeclared transfer function '" +
                      body->function + "'");
    }
  }
  return net;
}

LoadedModel load_model(const std::string& text) {
  ModelDocument doc = parse_model(text);
  LoadedModel loaded;
  loaded.name = doc.name;
  loaded.net = instantiate_model(doc);
  loaded.defaults = doc.defaults;
  return loaded;
}

}  // namespace petrisim
