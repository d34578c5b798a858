#include "pathregret/network.hpp"

#include <cmath>
#include <string>

namespace pathregret {

Network::Network(ParametricPathNetwork instance) : inst_(std::move(instance)) {
  n_ = static_cast<int>(inst_.weights.size());
  validate();

  positions_.resize(n_);
  positions_[0] = 0.0;
  for (int i = 1; i < n_; ++i) positions_[i] = positions_[i - 1] + inst_.lengths[i - 1];

  weight_prefix_.resize(n_ + 1);
  weight_prefix_[0] = LinearFn{};
  for (int i = 0; i < n_; ++i)
    weight_prefix_[i + 1] = weight_prefix_[i] + inst_.weights[i];

  const int m = n_ - 1;
  log2_.resize(m + 1, 0);
  for (int k = 2; k <= m; ++k) log2_[k] = log2_[k / 2] + 1;
  rmq_.push_back(inst_.capacities);
  for (int lvl = 1; (1 << lvl) <= m; ++lvl) {
    const int len = 1 << lvl;
    std::vector<double> row(m - len + 1);
    for (int i = 0; i + len <= m; ++i)
      row[i] = std::min(rmq_[lvl - 1][i], rmq_[lvl - 1][i + len / 2]);
    rmq_.push_back(std::move(row));
  }
}

void Network::validate() const {
  if (n_ < 2) throw ValidationError("instance needs at least 2 vertices");
  if (inst_.lengths.size() != static_cast<size_t>(n_ - 1))
    throw ValidationError("expected " + std::to_string(n_ - 1) + " edge lengths, got " +
                          std::to_string(inst_.lengths.size()));
  if (inst_.capacities.size() != static_cast<size_t>(n_ - 1))
    throw ValidationError("expected " + std::to_string(n_ - 1) + " edge capacities, got " +
                          std::to_string(inst_.capacities.size()));
  if (!(inst_.tau > 0.0)) throw ValidationError("nonpositive transit factor tau");
  if (!(inst_.horizon.lo < inst_.horizon.hi))
    throw ValidationError("empty horizon: t- must be smaller than t+");
  for (int e = 0; e < n_ - 1; ++e) {
    if (!(inst_.lengths[e] > 0.0))
      throw ValidationError("nonpositive edge length at edge " + std::to_string(e));
    if (!(inst_.capacities[e] > 0.0))
      throw ValidationError("nonpositive edge capacity at edge " + std::to_string(e));
  }
  // linear weights: nonnegativity on the horizon follows from the endpoints
  for (int i = 0; i < n_; ++i) {
    for (double t : {inst_.horizon.lo, inst_.horizon.hi}) {
      if (inst_.weights[i](t) < 0.0)
        throw ValidationError("negative weight at vertex " + std::to_string(i) +
                              " at t=" + std::to_string(t));
    }
  }
}

LinearFn Network::prefix_weight(int i, int j) const {
  if (i > j) return LinearFn{};  // empty range, also for the i-1 / i+1 sentinels
  if (i < 0 || j >= n_)
    throw std::out_of_range("prefix_weight: vertex index out of range");
  return weight_prefix_[j + 1] - weight_prefix_[i];
}

double Network::range_min_capacity(int i, int j) const {
  if (i < 0 || j >= n_ - 1 || i > j)
    throw std::out_of_range("range_min_capacity: bad edge range");
  const int lvl = log2_[j - i + 1];
  return std::min(rmq_[lvl][i], rmq_[lvl][j - (1 << lvl) + 1]);
}

}  // namespace pathregret
