#pragma once

#include <random>

#include "pathregret/network.hpp"

namespace pathregret {

/// Random instance family used by the benchmark and the test suites.
/// Weights: a ~ U[0, 10], b ~ U[-a/t+, 10] (keeps w nonnegative on [0, t+]).
/// Lengths and capacities: log-uniform on [0.1, 10]; uniform-capacity mode
/// draws a single capacity for all edges. Horizon [0, t_hi], transit factor 1.
struct GeneratorOptions {
  int n = 2;
  bool uniform_capacity = false;
  double t_hi = 1.0;
  double tau = 1.0;
};

ParametricPathNetwork random_instance(std::mt19937_64& rng, const GeneratorOptions& opt);

}  // namespace pathregret
