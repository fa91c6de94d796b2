#include "petrisim/model_file.hpp"
#include "petrisim/report.hpp"

namespace petrisim {

namespace {

void require_rate(double rate, const char* name) {
  if (!(rate >= 0)) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(name) + " rate must be non-negative");
  }
}

SimDefaults defaults(double length, double timestep, long long frequency) {
  SimDefaults d;
  d.length = length;
  d.timestep = timestep;
  d.report_frequency = frequency;
  return d;
}

}  // namespace

ModelDocument builtin_bread() {
  ModelDocument doc;
  doc.name = "bread";
  doc.places = {
      // the ingredients
      {"flour", {{"flour", 1000}}},
      {"water", {{"water", 500}}},
      {"sugar", {{"sugar", 20}}},
      {"yeast", {{"yeast", 1}}},
      // the utensils
      {"mixer",
       {{"flour", 0}, {"water", 0}, {"sugar", 0}, {"yeast", 0}, {"dough", 0}}},
      {"pan", {{"dough", 0}}},
      {"oven", {{"dough", 0}, {"bread", 0}}},
      {"table", {{"bread", 0}, {"temperature", 400}}},
      {"air", {{"heat", 0}}},
  };
  doc.functions = {
      {"cooling",
       "if table.temperature <= 30 then 0 else 0.1 * table.temperature"},
  };
  doc.rules = {
      {"add_flour", "step", {"flour.flour -> mixer.flour; 100"}, ""},
      {"add_water", "step", {"water.water -> mixer.water; 50"}, ""},
      {"add_sugar", "step", {"sugar.sugar -> mixer.sugar; 2"}, ""},
      {"add_yeast", "delay", {"yeast.yeast -> mixer.yeast; 0.5; 5"}, ""},
      {"blend",
       "step",
       {"mixer.flour -> mixer.dough; 80", "mixer.water -> mixer.dough; 40",
        "mixer.sugar -> mixer.dough; 1.5", "mixer.yeast -> mixer.dough; 1"},
       ""},
      {"rise",
       "incubate",
       {"10; mixer.dough -> pan.dough; mixer.flour == 0; mixer.water == 0; "
        "mixer.sugar == 0; mixer.yeast == 0"},
       ""},
      {"set", "incubate", {"10; pan.dough -> oven.dough; pan.dough > 0"}, ""},
      {"bake", "ratio", {"oven.dough -> oven.bread; 0.3; oven.dough < 1; 0"},
       ""},
      {"transfer", "incubate",
       {"1; oven.bread -> table.bread; oven.dough == 0"}, ""},
      {"cool", "function",
       {"table.temperature -> air.heat", "table.bread > 0"}, "cooling"},
  };
  doc.defaults = defaults(90, 1, 1);
  return doc;
}

ModelDocument builtin_sirs(double beta, double gamma, double xi) {
  require_rate(beta, "infection");
  require_rate(gamma, "recovery");
  require_rate(xi, "resusceptibility");
  ModelDocument doc;
  doc.name = "sirs";
  doc.places = {
      {"susceptible", {{"susceptible", 100}}},
      {"infected", {{"infected", 0}}},
      {"recovered", {{"recovered", 0}}},
  };
  doc.functions = {
      {"susceptible_infected",
       format_double(beta) + " * susceptible.susceptible"},
      {"infected_recovered", format_double(gamma) + " * infected.infected"},
      {"recovered_susceptible", format_double(xi) + " * recovered.recovered"},
  };
  doc.rules = {
      {"infection",
       "function",
       {"susceptible.susceptible -> infected.infected",
        "susceptible.susceptible > 0"},
       "susceptible_infected"},
      {"recovery",
       "function",
       {"infected.infected -> recovered.recovered", "infected.infected > 0"},
       "infected_recovered"},
      {"resusceptible",
       "function",
       {"recovered.recovered -> susceptible.susceptible",
        "recovered.recovered > 0"},
       "recovered_susceptible"},
  };
  doc.defaults = defaults(500, 1, 1);
  return doc;
}

ModelDocument builtin_sis(double beta, double gamma) {
  require_rate(beta, "infection");
  require_rate(gamma, "recovery");
  ModelDocument doc;
  doc.name = "sis";
  doc.places = {
      {"susceptible", {{"susceptible", 100}}},
      {"infected", {{"infected", 0}}},
  };
  doc.functions = {
      {"susceptible_infected",
       format_double(beta) + " * susceptible.susceptible"},
      {"infected_recovered", format_double(gamma) + " * infected.infected"},
  };
  doc.rules = {
      {"infection",
       "function",
       {"susceptible.susceptible -> infected.infected",
        "susceptible.susceptible > 0"},
       "susceptible_infected"},
      {"recovery",
       "function",
       {"infected.infected -> susceptible.susceptible",
        "infected.infected > 0"},
       "infected_recovered"},
  };
  doc.defaults = defaults(500, 1, 1);
  return doc;
}

std::optional<ModelDocument> find_builtin(std::string_view name) {
  if (name == "bread") return builtin_bread();
  if (name == "sirs") return builtin_sirs(0.01, 0.005, 0.01);
  if (name == "sir") {
    ModelDocument doc = builtin_sirs(0.01, 0.005, 0.0);
    doc.name = "sir";
    return doc;
  }
  if (name == "sis") return builtin_sis(0.01, 0.005);
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  return {"bread", "sirs", "sir", "sis"};
}

}  // namespace petrisim
