#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "petrisim/engine.hpp"
#include "petrisim/model_file.hpp"
#include "petrisim/net.hpp"
#include "support/oracles.hpp"

using namespace petrisim;
using petrisim::testing::BlueprintOptions;
using petrisim::testing::random_blueprint;

TEST_CASE("step rules move their amount every step") {
  PetriNet net;
  net.add_place("flour", {{"flour", 1000}});
  net.add_place("mixer", {{"flour", 0}});
  net.add_rule("add_flour", "step", {"flour.flour -> mixer.flour; 100"});

  simulate(net, 1, 1, 1);
  CHECK(net.count("mixer", "flour") == 100);
  simulate(net, 2, 1, 1);
  CHECK(net.count("mixer", "flour") == 300);
  CHECK(net.count("flour", "flour") == 700);
}

TEST_CASE("delay rules fire only on whole intervals") {
  PetriNet net;
  net.add_place("yeast", {{"yeast", 1}});
  net.add_place("mixer", {{"yeast", 0}});
  net.add_rule("add_yeast", "delay", {"yeast.yeast -> mixer.yeast; 0.5; 5"});

  // fires at steps 5 and 10; nothing before, between or after
  const double expected[] = {0, 0, 0, 0, 0.5, 0.5, 0.5, 0.5, 0.5, 1.0};
  auto records = simulate(net, 10, 1, 1);
  REQUIRE(records.size() == 11);
  for (int k = 1; k <= 10; ++k) {
    CHECK(records[k].values[1] == expected[k - 1]);
  }
}

TEST_CASE("ratio rules shrink geometrically and flush below the stop limit") {
  PetriNet net;
  net.add_place("oven", {{"dough", 100}, {"bread", 0}});
  net.add_rule("bake", "ratio",
               {"oven.dough -> oven.bread; 0.3; oven.dough < 1; 0"});

  // independent decay: dough(k) = 100 * 0.7^k until it crosses 1 at k = 13
  double dough = 100;
  int k = 0;
  for (; dough >= 1; ++k) dough *= 0.7;
  CHECK(k == 13);

  auto records = simulate(net, 14, 1, 1);
  double expected = 100;
  for (int step = 1; step <= 13; ++step) {
    expected *= 0.7;
    CHECK(records[step].values[0] ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // the flush drives the source to exactly the target
  CHECK(records[14].values[0] == 0.0);
  CHECK(net.count("oven", "dough") == 0.0);
  CHECK(net.count("oven", "bread") ==
        doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("ratio flush lands exactly on a nonzero target") {
  PetriNet net;
  net.add_place("a", {{"t", 10}});
  net.add_place("b", {{"t", 0}});
  net.add_rule("r", "ratio", {"a.t -> b.t; 0.5; a.t <= 10; 4"});
  simulate(net, 1, 1, 1);
  CHECK(net.count("a", "t") == 4.0);
  CHECK(net.count("b", "t") == 6.0);
  // below the target the flush clamps at zero movement
  net.find_place("a")->store.set("t", 3.0);
  simulate(net, 1, 1, 1);
  CHECK(net.count("a", "t") == 3.0);
}

TEST_CASE("incubate fires on the Nth consecutive holding step") {
  PetriNet net;
  net.add_place("gate", {{"open", 1}});
  net.add_place("src", {{"d", 100}});
  net.add_place("dst", {{"d", 0}});
  net.add_rule("move", "incubate", {"10; src.d -> dst.d; gate.open > 0"});

  auto records = simulate(net, 12, 1, 1);
  for (int step = 1; step <= 9; ++step) CHECK(records[step].values[2] == 0);
  CHECK(records[10].values[2] == 100);  // fired on step 10
  CHECK(records[10].values[1] == 0);
  CHECK(records[11].values[2] == 100);  // an empty source refires harmlessly
}

TEST_CASE("a failing guard resets the incubate timer") {
  PetriNet net;
  net.add_place("gate", {{"open", 1}});
  net.add_place("src", {{"d", 50}});
  net.add_place("dst", {{"d", 0}});
  net.add_rule("move", "incubate", {"4; src.d -> dst.d; gate.open > 0"});

  simulate(net, 3, 1, 1);  // three holding steps, one short of firing
  net.find_place("gate")->store.set("open", 0.0);
  simulate(net, 1, 1, 1);  // guard fails, timer resets
  net.find_place("gate")->store.set("open", 1.0);
  simulate(net, 3, 1, 1);  // three more holding steps: still nothing
  CHECK(net.count("dst", "d") == 0);
  simulate(net, 1, 1, 1);  // fourth consecutive holding step fires
  CHECK(net.count("dst", "d") == 50);
}

TEST_CASE("incubate refires after every full window while guards hold") {
  PetriNet net;
  net.add_place("src", {{"d", 0}});
  net.add_place("dst", {{"d", 0}});
  net.add_rule("refill", "step", {"ouroboros.U -> src.d; 5"});
  net.add_rule("move", "incubate", {"10; src.d -> dst.d; dst.d >= 0"});

  simulate(net, 30, 1, 1);
  // fired at steps 10, 20 and 30, each time moving the snapshot count
  CHECK(net.count("dst", "d") == 45 + 50 + 50);
  CHECK(net.count("src", "d") == 5);  // this step's refill landed after
}

TEST_CASE("function rules gate on guards and use the snapshot") {
  PetriNet net;
  net.add_place("table", {{"bread", 0}, {"temperature", 400}});
  net.add_place("air", {{"heat", 0}});
  net.register_function("cooling", [](const StateView& state) {
    double temp = state.count("table", "temperature");
    return temp <= 30.0 ? 0.0 : 0.1 * temp;
  });
  net.add_rule("cool", "function",
               {"table.temperature -> air.heat", "table.bread > 0"},
               "cooling");

  simulate(net, 5, 1, 1);
  CHECK(net.count("table", "temperature") == 400);  // guard never held

  net.find_place("table")->store.set("bread", 1.0);
  auto records = simulate(net, 3, 1, 1);
  CHECK(records[1].values[1] == 360.0);
  CHECK(records[2].values[1] == 324.0);
  CHECK(records[3].values[1] == doctest::Approx(291.6).epsilon(1e-12));
}

TEST_CASE("a function rule applies one computed amount to all its arcs") {
  PetriNet net;
  net.add_place("src", {{"t", 100}, {"u", 100}});
  net.add_place("dst", {{"t", 0}, {"u", 0}});
  net.register_function("five", [](const StateView&) { return 5.0; });
  net.add_rule("pair", "function",
               {"src.t -> dst.t", "src.u -> dst.u", "src.t > 0"}, "five");
  simulate(net, 2, 1, 1);
  CHECK(net.count("dst", "t") == 10);
  CHECK(net.count("dst", "u") == 10);
}

TEST_CASE("transfer function errors abort with rule name and step") {
  PetriNet net;
  net.add_place("a", {{"t", 1}});
  net.register_function("bad", [](const StateView&) { return -1.0; });
  net.add_rule("r", "function", {"a.t -> a.t", "bad", "a.t >= 0"});
  try {
    simulate(net, 5, 1, 1);
    FAIL("expected NegativeTransfer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeTransfer);
    CHECK(std::string(e.what()).find("'r'") != std::string::npos);
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }

  PetriNet nan_net;
  nan_net.add_place("a", {{"t", 1}});
  nan_net.register_function("nan", [](const StateView&) {
    return std::numeric_limits<double>::quiet_NaN();
  });
  nan_net.add_rule("r", "function", {"a.t -> a.t", "nan", "a.t >= 0"});
  try {
    simulate(nan_net, 1, 1, 1);
    FAIL("expected NonFiniteTransfer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteTransfer);
  }
}

TEST_CASE("withdrawals clamp sequentially in registration order") {
  PetriNet net;
  net.add_place("src", {{"t", 150}});
  net.add_place("d1", {{"t", 0}});
  net.add_place("d2", {{"t", 0}});
  net.add_rule("first", "step", {"src.t -> d1.t; 100"});
  net.add_rule("second", "step", {"src.t -> d2.t; 100"});

  simulate(net, 1, 1, 1);
  CHECK(net.count("d1", "t") == 100);
  CHECK(net.count("d2", "t") == 50);
  CHECK(net.count("src", "t") == 0.0);  // exact zero, no residue
  CHECK(!std::signbit(net.count("src", "t")));
}

TEST_CASE("the infinite place is never clamped and swallows deposits") {
  PetriNet net;
  net.add_place("dst", {{"U", 0}});
  net.add_rule("pour", "step", {"ouroboros.U -> dst.U; 100"});
  simulate(net, 1, 1, 1);
  CHECK(net.count("dst", "U") == 100);
  CHECK(std::isinf(net.count("ouroboros", "U")));

  PetriNet sink_net;
  sink_net.add_place("src", {{"t", 10}});
  sink_net.add_rule("drain", "step", {"src.t -> ouroboros.t; 4"});
  simulate(sink_net, 1, 1, 1);
  CHECK(sink_net.count("src", "t") == 6);
}

TEST_CASE("an all-zero plan leaves the state bitwise unchanged") {
  PetriNet net;
  net.add_place("a", {{"t", 0.1}});
  net.add_place("b", {{"t", 2.7}});
  net.add_rule("idle", "delay", {"a.t -> b.t; 5; 7"});
  simulate(net, 3, 1, 1);  // the delay never fires within 3 steps
  CHECK(net.count("a", "t") == 0.1);
  CHECK(net.count("b", "t") == 2.7);
}

TEST_CASE("record counts follow the reporting stride") {
  PetriNet net;
  auto records = simulate(net, 10, 1, 2);
  REQUIRE(records.size() == 6);
  const double clocks[] = {0, 2, 4, 6, 8, 10};
  for (int i = 0; i < 6; ++i) CHECK(records[i].clock == clocks[i]);

  PetriNet short_net;
  auto one = simulate(short_net, 0.5, 1, 1);  // ceil(0.5 / 1) = 1 step
  REQUIRE(one.size() == 2);
  CHECK(one[1].clock == 1);

  // a stride longer than the run leaves only the initial row
  PetriNet sparse;
  auto initial_only = simulate(sparse, 10, 1, 100);
  REQUIRE(initial_only.size() == 1);
  CHECK(initial_only[0].clock == 0);
}

TEST_CASE("simulate validates its configuration") {
  PetriNet net;
  CHECK_THROWS_AS(simulate(net, 0, 1, 1), Error);
  CHECK_THROWS_AS(simulate(net, 10, -1, 1), Error);
  CHECK_THROWS_AS(simulate(net, 10, 1, 0), Error);
  try {
    simulate(net, 10, 1, -2);
    FAIL("expected InvalidConfig");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidConfig);
  }
}

TEST_CASE("a second simulate continues from the final state") {
  PetriNet net;
  net.add_place("a", {{"t", 100}});
  net.add_place("b", {{"t", 0}});
  net.add_rule("tick", "delay", {"a.t -> b.t; 1; 10"});

  simulate(net, 5, 1, 1);
  CHECK(net.step_index() == 5);
  CHECK(net.clock() == 5);
  auto records = simulate(net, 5, 1, 1);
  // the delay fires at absolute step 10, i.e. the 5th step of this run
  CHECK(records.front().clock == 5);
  CHECK(records.back().clock == 10);
  CHECK(net.count("b", "t") == 1);
}

TEST_CASE("streaming yields one applied step at a time") {
  PetriNet net;
  net.add_place("a", {{"t", 100}});
  net.add_place("b", {{"t", 0}});
  net.add_rule("move", "step", {"a.t -> b.t; 1"});

  SimulationStream stream = simulate_stream(net, 10, 1);
  for (int i = 0; i < 3; ++i) {
    auto frame = stream.next();
    REQUIRE(frame.has_value());
    CHECK(frame->clock == i + 1);
  }
  // abandoned after 3 yields: exactly 3 steps applied
  CHECK(net.step_index() == 3);
  CHECK(net.count("b", "t") == 3);
  CHECK(stream.remaining() == 7);
}

TEST_CASE("consuming a stream matches stored mode bitwise") {
  auto build = [] {
    PetriNet net;
    net.add_place("oven", {{"dough", 100}, {"bread", 0}});
    net.add_rule("bake", "ratio",
                 {"oven.dough -> oven.bread; 0.3; oven.dough < 1; 0"});
    return net;
  };

  PetriNet stored_net = build();
  auto stored = simulate(stored_net, 20, 1, 1);

  PetriNet streamed_net = build();
  std::vector<Frame> frames;
  frames.push_back(streamed_net.frame());
  SimulationStream stream = simulate_stream(streamed_net, 20, 1);
  while (auto frame = stream.next()) frames.push_back(*frame);
  auto streamed = report_tokens(frames);

  REQUIRE(stored.size() == streamed.size());
  for (std::size_t i = 0; i < stored.size(); ++i) {
    CHECK(stored[i].clock == streamed[i].clock);
    CHECK(stored[i].labels == streamed[i].labels);
    REQUIRE(stored[i].values.size() == streamed[i].values.size());
    for (std::size_t j = 0; j < stored[i].values.size(); ++j) {
      CHECK(stored[i].values[j] == streamed[i].values[j]);
    }
  }
  // identical final net state as well
  CHECK(stored_net.count("oven", "dough") ==
        streamed_net.count("oven", "dough"));
  CHECK(stored_net.count("oven", "bread") ==
        streamed_net.count("oven", "bread"));
}

TEST_CASE("length zero point five with unit timestep yields one step") {
  PetriNet net;
  net.add_place("a", {{"t", 1}});
  net.add_rule("move", "step", {"a.t -> a.t; 1"});
  SimulationStream stream = simulate_stream(net, 0.5, 1);
  auto frame = stream.next();
  REQUIRE(frame.has_value());
  CHECK(frame->clock == 1);
  CHECK(!stream.next().has_value());
}

TEST_CASE("identical models and configs serialize identically") {
  std::ostringstream first;
  std::ostringstream second;
  {
    PetriNet net = instantiate_model(builtin_bread());
    write_csv(simulate(net, 90, 1, 1), first);
  }
  {
    PetriNet net = instantiate_model(builtin_bread());
    write_csv(simulate(net, 90, 1, 1), second);
  }
  CHECK(first.str() == second.str());
}

TEST_CASE("token totals are conserved when the infinite place is untouched") {
  std::mt19937 rng(20250808);
  for (int trial = 0; trial < 50; ++trial) {
    BlueprintOptions options;
    options.allow_incubate = true;
    auto blueprint = random_blueprint(rng, options);
    PetriNet net = blueprint.instantiate();

    double initial = 0;
    for (const Place& place : net.places()) {
      if (place.infinite) continue;
      for (const auto& [token, count] : place.store.entries()) {
        initial += count;
      }
    }

    SimulationStream stream = simulate_stream(net, 100, 1);
    while (auto frame = stream.next()) {
      double total = 0;
      for (const Place& place : frame->places) {
        if (place.infinite) continue;
        for (const auto& [token, count] : place.store.entries()) {
          total += count;
          CHECK(count >= 0);
        }
      }
      CHECK(total == doctest::Approx(initial).epsilon(1e-9));
    }
  }
}

TEST_CASE("compute_step_plan lists every arc in registration order") {
  PetriNet net;
  net.add_place("a", {{"t", 100}});
  net.add_place("b", {{"t", 3}, {"u", 0}});
  net.add_rule("always", "step", {"a.t -> b.t; 7", "b.t -> b.u; 2"});
  net.add_rule("spiky", "delay", {"a.t -> b.u; 4; 3"});
  net.add_rule("drain", "ratio", {"b.t -> a.t; 0.5; b.t < 1; 0"});

  net.set_step_index(1);
  StepPlan plan = compute_step_plan(net, net.view(), 1);
  REQUIRE(plan.items.size() == 4);
  CHECK(plan.items[0].arc == TransitionArc{"a", "t", "b", "t"});
  CHECK(plan.items[0].amount == 7);
  CHECK(plan.items[1].amount == 2);
  CHECK(plan.items[2].amount == 0);    // delay idle at step 1
  CHECK(plan.items[3].amount == 1.5);  // 0.5 * snapshot count of b.t

  // the plan was computed from an untouched snapshot
  CHECK(net.count("a", "t") == 100);

  apply_plan(net, plan);
  CHECK(net.count("a", "t") == 100 - 7 + 1.5);
  CHECK(net.count("b", "t") == 3 + 7 - 2 - 1.5);
  CHECK(net.count("b", "u") == 2);

  CHECK_THROWS_AS(compute_step_plan(net, net.view(), 0), Error);
  CHECK_THROWS_AS(compute_step_plan(net, net.view(), -5), Error);
}

TEST_CASE("apply_plan clamps against the mid-application count") {
  PetriNet net;
  net.add_place("src", {{"t", 10}});
  net.add_place("dst", {{"t", 0}});
  StepPlan plan;
  plan.items.push_back({TransitionArc{"src", "t", "dst", "t"}, 8});
  plan.items.push_back({TransitionArc{"src", "t", "dst", "t"}, 8});
  apply_plan(net, plan);
  CHECK(net.count("src", "t") == 0.0);
  CHECK(net.count("dst", "t") == 10.0);
}

TEST_CASE("condition references are validated at registration") {
  PetriNet net;
  net.add_place("a", {{"t", 1}});
  net.add_place("b", {{"t", 1}});
  try {
    net.add_rule("r", "ratio", {"a.t -> b.t; 0.5; ghost.t < 1; 0"});
    FAIL("expected UnknownPlaceOrToken");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownPlaceOrToken);
  }
  try {
    net.add_rule("r", "incubate", {"3; a.t -> b.t; a.ghost > 0"});
    FAIL("expected UnknownPlaceOrToken");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownPlaceOrToken);
  }
  CHECK(net.rule_count() == 0);
}

TEST_CASE("a config struct drives simulate the same way") {
  PetriNet a;
  a.add_place("p", {{"t", 10}});
  a.add_rule("r", "step", {"p.t -> p.t; 1"});
  PetriNet b = a;

  SimulationConfig config;
  config.length = 10;
  config.timestep = 1;
  config.report_frequency = 2;
  auto via_config = simulate(a, config);
  auto via_args = simulate(b, 10, 1, 2);
  REQUIRE(via_config.size() == via_args.size());
  for (std::size_t i = 0; i < via_config.size(); ++i) {
    CHECK(via_config[i].clock == via_args[i].clock);
  }

  SimulationConfig bad;
  bad.length = -1;
  CHECK_THROWS_AS(simulate(a, bad), Error);
  CHECK_THROWS_AS(SimulationStream(a, 0, 1), Error);
}

TEST_CASE("compute_step_plan rejects non-finite proportional sources") {
  PetriNet net;
  net.add_place("dst", {{"U", 0}});
  net.add_rule("r", "ratio", {"ouroboros.U -> dst.U; 0.5; dst.U < 0; 0"});
  try {
    simulate(net, 1, 1, 1);
    FAIL("expected NonFiniteTransfer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteTransfer);
  }
}
