#include <benchmark/benchmark.h>

#include <random>

#include "petrisim/dsl.hpp"
#include "petrisim/engine.hpp"
#include "petrisim/expression.hpp"
#include "petrisim/model_file.hpp"

using namespace petrisim;

static void BM_BreadRun(benchmark::State& state) {
  const ModelDocument doc = builtin_bread();
  for (auto _ : state) {
    PetriNet net = instantiate_model(doc);
    auto records = simulate(net, 90, 1, 1);
    benchmark::DoNotOptimize(records);
  }
}
BENCHMARK(BM_BreadRun);

static void BM_SirsRun(benchmark::State& state) {
  const ModelDocument doc = builtin_sirs(0.01, 0.005, 0.01);
  const auto steps = static_cast<double>(state.range(0));
  for (auto _ : state) {
    PetriNet net = instantiate_model(doc);
    auto records = simulate(net, steps, 1, 1);
    benchmark::DoNotOptimize(records);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SirsRun)->Arg(500)->Arg(5000);

static void BM_SirsStream(benchmark::State& state) {
  const ModelDocument doc = builtin_sirs(0.01, 0.005, 0.01);
  const auto steps = static_cast<double>(state.range(0));
  for (auto _ : state) {
    PetriNet net = instantiate_model(doc);
    SimulationStream stream = simulate_stream(net, steps, 1);
    while (auto frame = stream.next()) benchmark::DoNotOptimize(*frame);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SirsStream)->Arg(500);

static void BM_ParseRuleSpec(benchmark::State& state) {
  const std::vector<std::string> spec = {
      "oven.dough -> oven.bread; 0.3; oven.dough < 1; 0"};
  for (auto _ : state) {
    auto body = parse_rule_spec(RuleKind::Ratio, spec);
    benchmark::DoNotOptimize(body);
  }
}
BENCHMARK(BM_ParseRuleSpec);

static void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state) {
    auto expr = parse_expression(
        "if table.temperature <= 30 then 0 else 0.1 * table.temperature");
    benchmark::DoNotOptimize(expr);
  }
}
BENCHMARK(BM_ParseExpression);

static void BM_EvalExpression(benchmark::State& state) {
  auto expr = parse_expression(
      "if table.temperature <= 30 then 0 else 0.1 * table.temperature");
  std::vector<Place> places(1);
  places[0].name = "table";
  places[0].store.insert("temperature", 400.0);
  StateView view(places);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_expression(*expr, view));
  }
}
BENCHMARK(BM_EvalExpression);

static void BM_LoadModelDocument(benchmark::State& state) {
  const std::string text = serialize_model(builtin_bread());
  for (auto _ : state) {
    LoadedModel loaded = load_model(text);
    benchmark::DoNotOptimize(loaded);
  }
}
BENCHMARK(BM_LoadModelDocument);

BENCHMARK_MAIN();
