#pragma once

#include "pathregret/network.hpp"
#include "pathregret/side_family.hpp"

namespace pathregret {

/// A sink position: either a vertex or a point strictly inside an edge.
struct SinkLocation {
  enum class Kind { vertex, edge };
  Kind kind = Kind::vertex;
  int index = 0;       // vertex id or edge id
  double offset = 0.0; // for edge points, distance from the left endpoint

  static SinkLocation at_vertex(int i) { return {Kind::vertex, i, 0.0}; }
  static SinkLocation on_edge(int e, double off) { return {Kind::edge, e, off}; }

  double coordinate(const Network& net) const {
    return kind == Kind::vertex ? net.position(index) : net.position(index) + offset;
  }
};

/// Maps a coordinate on [0, v_{n-1}] to a sink location, snapping to the
/// nearest vertex within tolerance.
SinkLocation locate(const Network& net, double x);

/// Evacuation completion time with the sink at the leftmost vertex.
double completion_time_first_vertex(const Network& net, double t);

/// Time at which the first z units of supply from the right (resp. left) of a
/// sink x on the closure of edge `edge` finish arriving at x. Requires
/// 0 < z <= total supply on that side at t.
double evac_time_from_right(const Network& net, int edge, double x, double t, double z);
double evac_time_from_left(const Network& net, int edge, double x, double t, double z);

/// Aggregate evacuation time: the integral of per-unit arrival times over all
/// supply, evaluated exactly by integrating the upper envelope of the side
/// families in z.
double aggregate_time(const Network& net, const SinkLocation& sink, double t);

/// The x-free part of one side's contribution at a fixed t (the integral of
/// the side family's envelope over the full supply range).
double side_integral_value(const Network& net, int edge, Side side, double t);

}  // namespace pathregret
