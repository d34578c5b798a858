#include "pathregret/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace pathregret {

ParametricPathNetwork random_instance(std::mt19937_64& rng, const GeneratorOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("random_instance: n must be at least 2");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo)));
  };

  ParametricPathNetwork inst;
  inst.tau = opt.tau;
  inst.horizon = {0.0, opt.t_hi};
  inst.weights.reserve(opt.n);
  for (int i = 0; i < opt.n; ++i) {
    const double a = 10.0 * unit(rng);
    const double b_lo = -a / opt.t_hi;
    const double b = b_lo + unit(rng) * (10.0 - b_lo);
    inst.weights.push_back({b, a});
  }
  const double shared_capacity = log_uniform(0.1, 10.0);
  for (int e = 0; e < opt.n - 1; ++e) {
    inst.lengths.push_back(log_uniform(0.1, 10.0));
    inst.capacities.push_back(opt.uniform_capacity ? shared_capacity
                                                   : log_uniform(0.1, 10.0));
  }
  return inst;
}

}  // namespace pathregret
