#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "pathregret/io.hpp"
#include "pathregret/regret.hpp"

using namespace pathregret;

namespace {

const char* kDoc = R"({
  "tau": 2.0,
  "horizon": [-1.0, 3.0],
  "vertices": [{"a": 1.0, "b": 0.5}, {"a": 2.0, "b": -0.5}, {"a": 0.0, "b": 1.0}],
  "edges": [{"length": 1.5, "capacity": 2.0}, {"length": 0.5, "capacity": 0.25}]
})";

}  // namespace

TEST_CASE("instance json round trip is exact") {
  const ParametricPathNetwork inst = instance_from_json(nlohmann::json::parse(kDoc));
  CHECK(inst.tau == 2.0);
  CHECK(inst.horizon.lo == -1.0);
  CHECK(inst.horizon.hi == 3.0);
  REQUIRE(inst.weights.size() == 3);
  CHECK(inst.weights[1].intercept == 2.0);
  CHECK(inst.weights[1].slope == -0.5);
  REQUIRE(inst.lengths.size() == 2);
  CHECK(inst.capacities[1] == 0.25);

  const ParametricPathNetwork back = instance_from_json(instance_to_json(inst));
  CHECK(back.tau == inst.tau);
  CHECK(back.horizon.lo == inst.horizon.lo);
  for (size_t i = 0; i < inst.weights.size(); ++i) {
    CHECK(back.weights[i].slope == inst.weights[i].slope);
    CHECK(back.weights[i].intercept == inst.weights[i].intercept);
  }
  CHECK(back.lengths == inst.lengths);
  CHECK(back.capacities == inst.capacities);
}

TEST_CASE("malformed documents raise json errors with position info") {
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse("{ not json")),
                  nlohmann::json::parse_error);
  // missing required keys
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"tau": 1.0})")),
                  nlohmann::json::exception);
}

TEST_CASE("edge-count mismatch is a validation failure, not a parse failure") {
  auto j = nlohmann::json::parse(kDoc);
  j["edges"].erase(1);
  const ParametricPathNetwork inst = instance_from_json(j);
  CHECK_THROWS_AS(Network{inst}, ValidationError);
}

TEST_CASE("load_instance reads files and reports missing ones") {
  const std::string path = "/tmp/pathregret_io_test.json";
  {
    std::ofstream out(path);
    out << kDoc;
  }
  const ParametricPathNetwork inst = load_instance(path);
  CHECK(inst.weights.size() == 3);
  std::remove(path.c_str());
  CHECK_THROWS(load_instance(path));
}

TEST_CASE("solve result serialization carries the sink and diagnostics") {
  ParametricPathNetwork inst;
  inst.weights = {{0, 1}, {0, 2}, {0, 1}};
  inst.lengths = {1, 1};
  inst.capacities = {1, 1};
  inst.horizon = {0, 1};
  const Network net(inst);
  const SolveResult r = solve(net);
  const nlohmann::json j = result_to_json(net, r);

  CHECK(j.at("sink").contains("kind"));
  CHECK(j.at("sink").contains("coordinate"));
  CHECK(j.at("max_regret").get<double>() == doctest::Approx(r.max_regret));
  CHECK(j.at("diagnostics").at("pieces_f_left").size() == 2);
  CHECK(j.at("diagnostics").at("pieces_opt").get<int>() >= 1);
  CHECK(j.at("diagnostics").at("mr_vertex").size() == 3);
  if (r.sink.kind == SinkLocation::Kind::vertex) {
    CHECK(j.at("sink").at("kind") == "vertex");
    CHECK(!j.at("sink").contains("offset"));
  } else {
    CHECK(j.at("sink").at("kind") == "edge");
    CHECK(j.at("sink").contains("offset"));
  }
}
