#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pathregret/evacuation.hpp"
#include "pathregret/generator.hpp"
#include "pathregret/oracle.hpp"

using namespace pathregret;

namespace {

ParametricPathNetwork const_weights(std::vector<double> w, std::vector<double> len,
                                    std::vector<double> cap, double tau = 1.0) {
  ParametricPathNetwork inst;
  for (double a : w) inst.weights.push_back({0, a});
  inst.lengths = std::move(len);
  inst.capacities = std::move(cap);
  inst.tau = tau;
  inst.horizon = {0, 1};
  return inst;
}

}  // namespace

TEST_CASE("completion time at the first vertex: three-vertex bottleneck case") {
  const Network net(const_weights({0, 1, 2}, {1, 1}, {1, 2}));
  // max{ tau*l1 + (w2+w3)/c1, tau*(l1+l2) + w3/min(c1,c2) } = max{1+3, 2+2} = 4
  CHECK(completion_time_first_vertex(net, 0.5) == doctest::Approx(4.0));
}

TEST_CASE("completion time with zero supply degenerates to the travel term") {
  const Network net(const_weights({0, 0, 0}, {1, 2}, {1, 1}, 2.0));
  CHECK(completion_time_first_vertex(net, 0.0) == doctest::Approx(2.0 * 3.0));
}

TEST_CASE("completion time matches the refined flow simulation") {
  std::mt19937_64 rng(31);
  GeneratorOptions opt;
  opt.n = 6;
  for (int rep = 0; rep < 20; ++rep) {
    const Network net(random_instance(rng, opt));
    for (double t : {0.0, 0.37, 1.0}) {
      const double total = net.prefix_weight(1, 5)(t);
      if (total < 1e-9) continue;
      const double closed = completion_time_first_vertex(net, t);
      const double sim = simulate_completion_refined(net, SinkLocation::at_vertex(0), t);
      CHECK(rel_err(closed, sim) <= 1e-5);
    }
  }
}

TEST_CASE("arrival times from the right: bucket maxima") {
  const Network net(const_weights({0, 2, 1}, {1, 1}, {1, 1}));
  const double x = 0.5, t = 0.0;
  CHECK(evac_time_from_right(net, 0, x, t, 1.0) == doctest::Approx(1.5));
  CHECK(evac_time_from_right(net, 0, x, t, 2.5) == doctest::Approx(3.0));
  CHECK_THROWS_AS(evac_time_from_right(net, 0, x, t, 3.5), std::domain_error);
  CHECK_THROWS_AS(evac_time_from_right(net, 0, x, t, 0.0), std::domain_error);
}

TEST_CASE("arrival times: vanishing supply tends to the travel time") {
  const Network net(const_weights({2, 0, 1}, {1, 1}, {1, 1}));
  const double x = 0.5;
  // nearest weighted vertex right of x is v2 at distance 1.5
  CHECK(evac_time_from_right(net, 0, x, 0.0, 1e-12) == doctest::Approx(1.5).epsilon(1e-6));
  // nearest weighted vertex left of x is v0 at distance 0.5
  CHECK(evac_time_from_left(net, 0, x, 0.0, 1e-12) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("arrival times are nondecreasing in the supply amount") {
  std::mt19937_64 rng(77);
  GeneratorOptions opt;
  opt.n = 7;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Network net(random_instance(rng, opt));
  const double t = 0.5;
  const int edge = 3;
  const double x = net.position(3) + 0.5 * net.length(3);
  const double wl = net.prefix_weight(0, 3)(t);
  const double wr = net.prefix_weight(4, 6)(t);
  for (int k = 0; k < 1000; ++k) {
    const double z1 = u(rng), z2 = u(rng);
    const double a = std::min(z1, z2), b = std::max(z1, z2);
    if (b - a < 1e-12) continue;
    CHECK(evac_time_from_left(net, edge, x, t, a * wl) <=
          evac_time_from_left(net, edge, x, t, b * wl) + 1e-9);
    CHECK(evac_time_from_right(net, edge, x, t, a * wr) <=
          evac_time_from_right(net, edge, x, t, b * wr) + 1e-9);
  }
}

TEST_CASE("aggregate time: zero supply and the single-contributor integral") {
  const Network zero(const_weights({0, 0}, {1}, {1}));
  CHECK(aggregate_time(zero, SinkLocation::at_vertex(0), 0.5) == doctest::Approx(0.0));

  const Network net(const_weights({0, 1}, {1}, {1}));
  // sink v0: integral of (tau*1 + z) over z in [0,1] = 1.5
  CHECK(aggregate_time(net, SinkLocation::at_vertex(0), 0.5) == doctest::Approx(1.5));
}

TEST_CASE("aggregate time matches direct quadrature of the arrival times") {
  std::mt19937_64 rng(5150);
  GeneratorOptions opt;
  opt.n = 8;
  for (int rep = 0; rep < 5; ++rep) {
    const Network net(random_instance(rng, opt));
    const double t = 0.25 + 0.5 * rep / 5.0;
    const int edge = 3;
    const double x = net.position(edge) + 0.4 * net.length(edge);
    const SinkLocation sink = SinkLocation::on_edge(edge, 0.4 * net.length(edge));

    const auto quad = [&](auto&& theta, double total) {
      if (total < 1e-12) return 0.0;
      const int panels = 100000;
      double acc = 0.0;
      for (int k = 0; k < panels; ++k)
        acc += theta(total * (k + 0.5) / panels);
      return acc * total / panels;
    };
    const double wl = net.prefix_weight(0, edge)(t);
    const double wr = net.prefix_weight(edge + 1, 7)(t);
    const double byquad =
        quad([&](double z) { return evac_time_from_left(net, edge, x, t, z); }, wl) +
        quad([&](double z) { return evac_time_from_right(net, edge, x, t, z); }, wr);
    CHECK(rel_err(aggregate_time(net, sink, t), byquad) <= 1e-5);
  }
}

TEST_CASE("aggregate time at interior edge points vs vertices across boundaries") {
  // Vertex values never exceed the one-sided edge limits: parking the sink just
  // inside an edge forces the adjacent supply through that edge's capacity.
  std::mt19937_64 rng(909);
  GeneratorOptions opt;
  opt.n = 6;
  for (int rep = 0; rep < 10; ++rep) {
    const Network net(random_instance(rng, opt));
    const double t = 0.5;
    for (int i = 0; i < net.vertex_count(); ++i) {
      const double at_vertex = aggregate_time(net, SinkLocation::at_vertex(i), t);
      if (i > 0) {
        const double off = (1.0 - 1e-6) * net.length(i - 1);
        const double from_left =
            aggregate_time(net, SinkLocation::on_edge(i - 1, off), t);
        CHECK(from_left >= at_vertex - 1e-7 * std::max(1.0, std::abs(at_vertex)));
      }
      if (i < net.vertex_count() - 1) {
        const double off = 1e-6 * net.length(i);
        const double from_right = aggregate_time(net, SinkLocation::on_edge(i, off), t);
        CHECK(from_right >= at_vertex - 1e-7 * std::max(1.0, std::abs(at_vertex)));
      }
    }
  }
}

TEST_CASE("completion time equals the full-supply arrival time from the right") {
  std::mt19937_64 rng(1234);
  GeneratorOptions opt;
  opt.n = 6;
  for (int rep = 0; rep < 20; ++rep) {
    const Network net(random_instance(rng, opt));
    const double t = 0.3;
    const double total = net.prefix_weight(1, 5)(t);
    if (total < 1e-9) continue;
    CHECK(completion_time_first_vertex(net, t) ==
          doctest::Approx(evac_time_from_right(net, 0, 0.0, t, total)));
  }
}

TEST_CASE("aggregate time rejects out-of-horizon parameters and bad sinks") {
  const Network net(const_weights({1, 1}, {1}, {1}));
  CHECK_THROWS_AS(aggregate_time(net, SinkLocation::at_vertex(0), 2.0),
                  std::domain_error);
  CHECK_THROWS_AS(aggregate_time(net, SinkLocation::on_edge(0, 0.0), 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(aggregate_time(net, SinkLocation::on_edge(0, 1.0), 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(aggregate_time(net, SinkLocation::at_vertex(5), 0.5),
                  std::out_of_range);
}
