#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pathregret/evacuation.hpp"
#include "pathregret/generator.hpp"
#include "pathregret/oracle.hpp"
#include "pathregret/regret.hpp"

using namespace pathregret;

namespace {

ParametricPathNetwork const_weights(std::vector<double> w, std::vector<double> len,
                                    std::vector<double> cap) {
  ParametricPathNetwork inst;
  for (double a : w) inst.weights.push_back({0, a});
  inst.lengths = std::move(len);
  inst.capacities = std::move(cap);
  inst.horizon = {0, 1};
  return inst;
}

}  // namespace

TEST_CASE("oracle aggregate agrees with the envelope-based evaluator") {
  std::mt19937_64 rng(60221);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GeneratorOptions opt;
  for (int rep = 0; rep < 10; ++rep) {
    opt.n = 2 + static_cast<int>(u(rng) * 12);
    const Network net(random_instance(rng, opt));
    for (int k = 0; k < 100; ++k) {
      const double x = net.total_length() * u(rng);
      const double t = u(rng);
      const SinkLocation loc = locate(net, x);
      const double via_envelope = aggregate_time(net, loc, t);
      const double via_buckets = oracle_aggregate_time(net, loc.coordinate(net), t);
      CHECK(rel_err(via_envelope, via_buckets) <= 1e-9);
    }
  }
}

TEST_CASE("oracle aggregate: hand values") {
  const Network zero(const_weights({0, 0}, {1}, {1}));
  CHECK(oracle_aggregate_time(zero, 0.0, 0.5) == doctest::Approx(0.0));

  const Network net(const_weights({0, 1}, {1}, {1}));
  CHECK(oracle_aggregate_time(net, 0.0, 0.5) == doctest::Approx(1.5));
}

TEST_CASE("oracle edge affine reproduces interior aggregates") {
  std::mt19937_64 rng(141421);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GeneratorOptions opt;
  opt.n = 9;
  const Network net(random_instance(rng, opt));
  for (int e = 0; e < net.edge_count(); ++e) {
    const double t = u(rng);
    const auto [A, B] = oracle_edge_affine(net, e, t);
    for (double frac : {0.2, 0.5, 0.8}) {
      const double x = net.position(e) + frac * net.length(e);
      CHECK(rel_err(A * x + B, oracle_aggregate_time(net, x, t)) <= 1e-12);
    }
  }
}

TEST_CASE("oracle max regret: scenario-independent instances need no grid") {
  const Network net(const_weights({2, 1, 3}, {1, 1}, {1, 2}));
  const double x = 1.5;
  const double direct = oracle_aggregate_time(net, x, 0.5) - oracle_opt(net, 0.5);
  CHECK(oracle_max_regret(net, x, 2, 0) == doctest::Approx(direct));
  CHECK(oracle_max_regret(net, x, 1000, 20) == doctest::Approx(direct));
}

TEST_CASE("oracle max regret never decreases under grid refinement") {
  std::mt19937_64 rng(173205);
  GeneratorOptions opt;
  opt.n = 6;
  const Network net(random_instance(rng, opt));
  const double x = 0.37 * net.total_length();
  double prev = oracle_max_regret(net, x, 17, 0);
  for (int g = 33; g <= 1025; g = 2 * g - 1) {
    const double cur = oracle_max_regret(net, x, g, 0);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("oracle max regret agrees with the exact pipeline") {
  std::mt19937_64 rng(244949);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GeneratorOptions opt;
  for (int rep = 0; rep < 4; ++rep) {
    opt.n = 3 + static_cast<int>(u(rng) * 6);
    const Network net(random_instance(rng, opt));
    const Analysis a = analyze(net);
    for (int k = 0; k < 10; ++k) {
      const double x = net.total_length() * u(rng);
      CHECK(rel_err(max_regret_at(net, a, x), oracle_max_regret(net, x, 10000, 40)) <=
            1e-4);
    }
  }
}

TEST_CASE("simulation: three-vertex bottleneck case converges to the closed form") {
  const Network net(const_weights({0, 1, 2}, {1, 1}, {1, 2}));
  CHECK(simulate_completion_refined(net, SinkLocation::at_vertex(0), 0.5) ==
        doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("simulation: no supply finishes immediately") {
  const Network net(const_weights({0, 0, 0}, {1, 1}, {1, 1}));
  CHECK(simulate_completion_refined(net, SinkLocation::at_vertex(0), 0.5) ==
        doctest::Approx(0.0));
}

TEST_CASE("simulation: single-edge hand pattern") {
  // sink at v0, supply w at v1: completion = tau*l + w/c
  const Network net(const_weights({0, 3}, {2}, {0.5}));
  CHECK(simulate_completion_refined(net, SinkLocation::at_vertex(0), 0.0) ==
        doctest::Approx(1.0 * 2 + 3 / 0.5));
}

TEST_CASE("simulation: stable under dt halving") {
  std::mt19937_64 rng(577215);
  GeneratorOptions opt;
  opt.n = 7;
  const Network net(random_instance(rng, opt));
  const SinkLocation sink = SinkLocation::on_edge(3, 0.5 * net.length(3));
  double dt = 1.0;
  double prev = simulate_completion(net, sink, 0.4, dt);
  for (int k = 0; k < 8; ++k) {
    dt *= 0.5;
    const double cur = simulate_completion(net, sink, 0.4, dt);
    CHECK(std::abs(cur - prev) <= 1e-8);
    prev = cur;
  }
  CHECK_THROWS_AS(simulate_completion(net, sink, 0.4, 0.0), std::invalid_argument);
}

TEST_CASE("simulation matches completion times at edge sinks too") {
  std::mt19937_64 rng(8675309);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GeneratorOptions opt;
  opt.n = 6;
  for (int rep = 0; rep < 10; ++rep) {
    const Network net(random_instance(rng, opt));
    const double t = u(rng);
    const int e = 2;
    const double off = net.length(e) * (0.1 + 0.8 * u(rng));
    const double x = net.position(e) + off;
    const SinkLocation sink = SinkLocation::on_edge(e, off);

    const double wl = net.prefix_weight(0, e)(t);
    const double wr = net.prefix_weight(e + 1, 5)(t);
    double closed = 0.0;
    if (wl > 1e-9) closed = std::max(closed, evac_time_from_left(net, e, x, t, wl));
    if (wr > 1e-9) closed = std::max(closed, evac_time_from_right(net, e, x, t, wr));
    CHECK(rel_err(simulate_completion_refined(net, sink, t), closed) <= 1e-6);
  }
}
