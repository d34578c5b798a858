#pragma once

#include <vector>

#include "pathregret/errors.hpp"
#include "pathregret/types.hpp"

namespace pathregret {

/// Raw instance data. Vertex i carries the supply w_i(t) = a_i + b_i*t;
/// edge i joins vertices i and i+1. All indices are 0-based.
struct ParametricPathNetwork {
  std::vector<LinearFn> weights;    // size n, nonnegative on the horizon
  std::vector<double> lengths;      // size n-1, positive
  std::vector<double> capacities;   // size n-1, positive
  double tau = 1.0;                 // travel time per unit distance
  Interval horizon;                 // scenario interval [t-, t+]
};

/// Validated instance with O(1) prefix-weight and range-minimum-capacity
/// queries. Immutable after construction; queries are read-only and safe to
/// share across threads.
class Network {
 public:
  /// Validates all invariants; throws ValidationError naming the first
  /// violated check and its index.
  explicit Network(ParametricPathNetwork instance);

  int vertex_count() const { return n_; }
  int edge_count() const { return n_ - 1; }
  double tau() const { return inst_.tau; }
  Interval horizon() const { return inst_.horizon; }
  const ParametricPathNetwork& instance() const { return inst_; }

  const LinearFn& weight(int i) const { return inst_.weights[i]; }
  double length(int e) const { return inst_.lengths[e]; }
  double capacity(int e) const { return inst_.capacities[e]; }

  /// Distance from the leftmost vertex, v_0 = 0.
  double position(int i) const { return positions_[i]; }
  double total_length() const { return positions_[n_ - 1]; }

  /// W_{i,j}(t) = sum of w_h over h in [i, j]; the zero function when i > j.
  LinearFn prefix_weight(int i, int j) const;

  /// min capacity over edges i..j (inclusive); requires i <= j.
  double range_min_capacity(int i, int j) const;

 private:
  ParametricPathNetwork inst_;
  int n_ = 0;
  std::vector<double> positions_;
  std::vector<LinearFn> weight_prefix_;        // weight_prefix_[k] = sum over [0, k)
  std::vector<std::vector<double>> rmq_;       // sparse table over capacities
  std::vector<int> log2_;

  void validate() const;
};

}  // namespace pathregret
