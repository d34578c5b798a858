#pragma once

#include <vector>

#include "pathregret/network.hpp"

namespace pathregret {

enum class Side { left, right };

/// The family of per-vertex arrival-time functions for one side of an edge,
/// with the sink's own coordinate stripped out. Member m is linear in the
/// cumulative supply z with slope 1/C (C the bottleneck capacity between the
/// member's vertex and the edge) and is defined for z in (D_m(t), total(t)].
///
/// Members are ordered outward from the edge, so domain starts and slopes are
/// both nondecreasing in m for every t in the horizon.
struct SideFamily {
  int edge = -1;
  Side side = Side::left;
  std::vector<int> vertex;         // member -> vertex id
  std::vector<double> slope;       // 1/C, nondecreasing
  std::vector<double> offset;      // value at the member's own domain start
  std::vector<LinearFn> dom_start; // D_m(t), nondecreasing in m
  LinearFn total;                  // total supply on this side

  int size() const { return static_cast<int>(vertex.size()); }

  /// f_m(t, z)
  double value(int m, double t, double z) const {
    return offset[m] + slope[m] * (z - dom_start[m](t));
  }
  /// z-intercept of member m at parameter t, so f_m(t,z) = slope*z + intercept.
  double z_intercept(int m, double t) const {
    return offset[m] - slope[m] * dom_start[m](t);
  }
};

/// Builds the family for the given edge and side. Side::left covers vertices
/// 0..edge, Side::right covers vertices edge+1..n-1.
SideFamily make_side_family(const Network& net, int edge, Side side);

struct SeqEntry {
  int member;     // realizer
  double z_from;  // start of the realizer's stretch
};

/// Upper-envelope sequence of the family in z at a fixed t: the ordered
/// realizers with the z at which each takes over. Empty when the side carries
/// no supply at t. Runs in O(M) amortized via a monotone stack (slopes and
/// domain starts are both nondecreasing in member order).
std::vector<SeqEntry> envelope_sequence(const SideFamily& fam, double t);

}  // namespace pathregret
