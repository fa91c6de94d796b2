#include <doctest.h>

#include <sstream>

#include "petrisim/engine.hpp"
#include "petrisim/model_file.hpp"
#include "petrisim/report.hpp"
#include "support/oracles.hpp"

using namespace petrisim;

TEST_CASE("labels follow place registration then token insertion order") {
  PetriNet net = instantiate_model(builtin_sirs(0.01, 0.005, 0.01));
  auto records = report_tokens({net.frame()});
  REQUIRE(records.size() == 1);
  CHECK(records[0].labels ==
        std::vector<std::string>{"susceptible.susceptible",
                                 "infected.infected", "recovered.recovered"});
  CHECK(records[0].values == std::vector<double>{100, 0, 0});
  CHECK(records[0].clock == 0);
}

TEST_CASE("the infinite place never appears in reports") {
  PetriNet net;
  net.add_place("dst", {{"U", 0}});
  net.add_rule("pour", "step", {"ouroboros.U -> dst.U; 1"});
  auto records = simulate(net, 3, 1, 1);
  for (const auto& record : records) {
    CHECK(record.labels == std::vector<std::string>{"dst.U"});
  }
}

TEST_CASE("the bread model reports its oven temperature at clock zero") {
  PetriNet net = instantiate_model(builtin_bread());
  auto record = report_frame(net.frame());
  REQUIRE(record.labels.size() == 15);
  bool found = false;
  for (std::size_t i = 0; i < record.labels.size(); ++i) {
    if (record.labels[i] == "table.temperature") {
      CHECK(record.values[i] == 400);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("write_csv emits the documented shape") {
  SimulationRecord row0{0, {"a.t", "b.u"}, {100, 0}};
  SimulationRecord row1{1, {"a.t", "b.u"}, {99.5, 0.5}};
  std::ostringstream out;
  write_csv({row0, row1}, out);
  CHECK(out.str() == "timestep,a.t,b.u\n0,100,0\n1,99.5,0.5\n");
}

TEST_CASE("one record and one column produce exactly two lines") {
  SimulationRecord row{0, {"a.t"}, {0.5}};
  std::ostringstream out;
  write_csv({row}, out);
  CHECK(out.str() == "timestep,a.t\n0,0.5\n");
}

TEST_CASE("an empty history is an error, not an empty file") {
  std::ostringstream out;
  try {
    write_csv({}, out);
    FAIL("expected EmptyHistory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyHistory);
  }
  try {
    write_json({}, out);
    FAIL("expected EmptyHistory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyHistory);
  }
  CHECK(out.str().empty());
  CHECK_THROWS_AS(report_tokens({}), Error);
}

TEST_CASE("write_json emits compact rows in label order") {
  SimulationRecord row{0, {"a.t"}, {1}};
  std::ostringstream out;
  write_json({row}, out);
  CHECK(out.str() == "[{\"timestep\":0,\"tokens\":{\"a.t\":1}}]\n");

  SimulationRecord row2{2.5, {"a.t", "b.u"}, {0.25, 3}};
  std::ostringstream two;
  write_json({row, row2}, two);
  CHECK(two.str() ==
        "[{\"timestep\":0,\"tokens\":{\"a.t\":1}},"
        "{\"timestep\":2.5,\"tokens\":{\"a.t\":0.25,\"b.u\":3}}]\n");
}

TEST_CASE("numbers render in shortest round-trip form") {
  CHECK(format_double(0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(100) == "100");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(-2.5) == "-2.5");
}

TEST_CASE("the epidemic run starts with its initial counts") {
  PetriNet net = instantiate_model(builtin_sirs(0.01, 0.005, 0.01));
  std::ostringstream out;
  write_csv(simulate(net, 2, 1, 1), out);
  std::istringstream lines(out.str());
  std::string header, first_row;
  std::getline(lines, header);
  std::getline(lines, first_row);
  CHECK(header ==
        "timestep,susceptible.susceptible,infected.infected,"
        "recovered.recovered");
  CHECK(first_row == "0,100,0,0");
}

TEST_CASE("emitted CSV re-parses to the exact doubles") {
  PetriNet net = instantiate_model(builtin_sirs(0.01, 0.005, 0.01));
  auto records = simulate(net, 50, 1, 1);
  std::ostringstream out;
  write_csv(records, out);

  auto parsed = petrisim::testing::parse_csv(out.str());
  REQUIRE(parsed.header.size() == 4);
  CHECK(parsed.header[0] == "timestep");
  REQUIRE(parsed.rows.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed.rows[i][0] == records[i].clock);
    for (std::size_t j = 0; j < records[i].values.size(); ++j) {
      CHECK(parsed.rows[i][j + 1] == records[i].values[j]);
    }
  }
}

TEST_CASE("column order is identical across runs of the same model") {
  PetriNet first = instantiate_model(builtin_bread());
  PetriNet second = instantiate_model(builtin_bread());
  auto a = simulate(first, 5, 1, 1);
  auto b = simulate(second, 5, 1, 1);
  CHECK(a.front().labels == b.front().labels);

  // every CSV row has the same field count
  std::ostringstream out;
  write_csv(a, out);
  auto parsed = petrisim::testing::parse_csv(out.str());
  for (const auto& row : parsed.rows) {
    CHECK(row.size() == parsed.header.size());
  }
}
