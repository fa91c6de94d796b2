#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "petrisim/net.hpp"

namespace petrisim {

// Declarative model files, JSON on disk:
//
//   {
//     "model": "sirs",
//     "places": [ {"name": "susceptible", "tokens": {"susceptible": 100}} ],
//     "functions": [ {"name": "infect",
//                     "expression": "0.01 * susceptible.susceptible"} ],
//     "rules": [ {"name": "infection", "kind": "function",
//                 "specs": ["susceptible.susceptible -> infected.infected",
//                           "susceptible.susceptible > 0"],
//                 "function": "infect"} ],
//     "defaults": {"length": 500, "timestep": 1, "report_frequency": 1}
//   }
//
// Rules instantiate in file order, which matters when several rules draw
// from the same token. Every section except "model" may be omitted.

struct PlaceDecl {
  std::string name;
  std::vector<std::pair<std::string, double>> tokens;

  bool operator==(const PlaceDecl&) const = default;
};

struct FunctionDecl {
  std::string name;
  std::string expression;

  bool operator==(const FunctionDecl&) const = default;
};

struct RuleDecl {
  std::string name;
  std::string kind;
  std::vector<std::string> specs;
  std::string function;  // empty unless kind == "function"

  bool operator==(const RuleDecl&) const = default;
};

struct SimDefaults {
  std::optional<double> length;
  std::optional<double> timestep;
  std::optional<long long> report_frequency;

  bool operator==(const SimDefaults&) const = default;
};

struct ModelDocument {
  std::string name;
  std::vector<PlaceDecl> places;
  std::vector<FunctionDecl> functions;
  std::vector<RuleDecl> rules;
  SimDefaults defaults;

  bool operator==(const ModelDocument&) const = default;
};

/// Parses model text into a document. Throws DocumentSyntaxError with a
/// location for malformed JSON or schema violations.
ModelDocument parse_model(const std::string& text);

std::string serialize_model(const ModelDocument& doc);

/// Builds and fully validates a net from a document: places registered,
/// expressions compiled against the net, every rule spec parsed, every
/// function reference resolved. All errors surface here, not mid-run.
PetriNet instantiate_model(const ModelDocument& doc);

struct LoadedModel {
  std::string name;
  PetriNet net;
  SimDefaults defaults;
};

LoadedModel load_model(const std::string& text);

// Built-in reference models.

/// Bread baking: 1521 g of ingredients mixed, risen twice, baked at 400
/// degrees and cooled. Nine places, ten rules, 90-step default run.
ModelDocument builtin_bread();

/// Susceptible/infected/recovered compartments with per-step linear rates:
/// infection beta*S, recovery gamma*I, loss of immunity xi*R. With xi = 0
/// this is the SIR model. Rates must be non-negative.
ModelDocument builtin_sirs(double beta, double gamma, double xi);

/// Two-compartment variant whose recovery arc returns individuals straight
/// to the susceptible pool.
ModelDocument builtin_sis(double beta, double gamma);

/// Built-in lookup by CLI name: bread, sirs, sir, sis.
std::optional<ModelDocument> find_builtin(std::string_view name);
std::vector<std::string> builtin_names();

}  // namespace petrisim
