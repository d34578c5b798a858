#include "pathregret/evacuation.hpp"

#include <cmath>
#include <stdexcept>

#include "pathregret/piecewise.hpp"

namespace pathregret {

namespace {

void check_horizon(const Network& net, double t) {
  const Interval T = net.horizon();
  if (!T.contains(t, tol_for(T.lo, T.hi)))
    throw std::domain_error("parameter t outside the horizon");
}

}  // namespace

SinkLocation locate(const Network& net, double x) {
  const double tol = tol_for(0.0, net.total_length());
  if (x < -tol || x > net.total_length() + tol)
    throw std::domain_error("sink coordinate outside the path");
  for (int i = 0; i < net.vertex_count(); ++i)
    if (std::abs(x - net.position(i)) <= tol) return SinkLocation::at_vertex(i);
  int e = 0;
  while (e + 1 < net.edge_count() && net.position(e + 1) < x) ++e;
  return SinkLocation::on_edge(e, x - net.position(e));
}

double completion_time_first_vertex(const Network& net, double t) {
  check_horizon(net, t);
  const int n = net.vertex_count();
  double best = 0.0;
  for (int i = 1; i < n; ++i) {
    const double supply = net.prefix_weight(i, n - 1)(t);
    const double v = net.tau() * net.position(i) + supply / net.range_min_capacity(0, i - 1);
    best = std::max(best, v);
  }
  return best;
}

double evac_time_from_right(const Network& net, int edge, double x, double t, double z) {
  check_horizon(net, t);
  const int n = net.vertex_count();
  if (edge < 0 || edge >= net.edge_count())
    throw std::out_of_range("evac_time_from_right: edge index out of range");
  const double postol = tol_for(net.position(edge), net.position(edge + 1));
  if (x < net.position(edge) - postol || x > net.position(edge + 1) + postol)
    throw std::domain_error("sink not on the closure of the edge");

  const double W = net.prefix_weight(edge + 1, n - 1)(t);
  const double ztol = tol_for(0.0, W);
  if (!(z > 0.0) || z > W + ztol)
    throw std::domain_error("supply amount out of range");

  // bucket owner: smallest j with cumulative weight from edge+1 through j >= z
  int lo = edge + 1, hi = n - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (net.prefix_weight(edge + 1, mid)(t) >= z)
      hi = mid;
    else
      lo = mid + 1;
  }
  const int j = lo;

  double best = -1e300;
  for (int h = edge + 1; h <= j; ++h) {
    const double queue = (z - net.prefix_weight(edge + 1, h - 1)(t)) /
                         net.range_min_capacity(edge, h - 1);
    best = std::max(best, net.tau() * (net.position(h) - x) + queue);
  }
  return best;
}

double evac_time_from_left(const Network& net, int edge, double x, double t, double z) {
  check_horizon(net, t);
  if (edge < 0 || edge >= net.edge_count())
    throw std::out_of_range("evac_time_from_left: edge index out of range");
  const double postol = tol_for(net.position(edge), net.position(edge + 1));
  if (x < net.position(edge) - postol || x > net.position(edge + 1) + postol)
    throw std::domain_error("sink not on the closure of the edge");

  const double W = net.prefix_weight(0, edge)(t);
  const double ztol = tol_for(0.0, W);
  if (!(z > 0.0) || z > W + ztol)
    throw std::domain_error("supply amount out of range");

  // bucket owner: largest j with cumulative weight from j through edge >= z
  int lo = 0, hi = edge;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (net.prefix_weight(mid, edge)(t) >= z)
      lo = mid;
    else
      hi = mid - 1;
  }
  const int j = lo;

  double best = -1e300;
  for (int h = j; h <= edge; ++h) {
    const double queue = (z - net.prefix_weight(h + 1, edge)(t)) /
                         net.range_min_capacity(h, edge);
    best = std::max(best, net.tau() * (x - net.position(h)) + queue);
  }
  return best;
}

double side_integral_value(const Network& net, int edge, Side side, double t) {
  const SideFamily fam = make_side_family(net, edge, side);
  const double W = fam.total(t);
  if (W <= kRelTol * std::max(1.0, W)) return 0.0;

  std::vector<PartialQuad> fns;
  fns.reserve(fam.size());
  for (int m = 0; m < fam.size(); ++m) {
    const double D = std::max(0.0, fam.dom_start[m](t));
    if (D >= W) continue;
    fns.push_back({QuadFn{0.0, fam.slope[m], fam.z_intercept(m, t)}, {D, W}, m});
  }
  return integral_over_domain(upper_envelope(fns, Interval{0.0, W}));
}

double aggregate_time(const Network& net, const SinkLocation& sink, double t) {
  check_horizon(net, t);
  const int n = net.vertex_count();
  double x, w_left, w_right, f_left = 0.0, f_right = 0.0;

  if (sink.kind == SinkLocation::Kind::vertex) {
    const int i = sink.index;
    if (i < 0 || i >= n) throw std::out_of_range("aggregate_time: vertex out of range");
    x = net.position(i);
    w_left = net.prefix_weight(0, i - 1)(t);
    w_right = net.prefix_weight(i + 1, n - 1)(t);
    if (i > 0) f_left = side_integral_value(net, i - 1, Side::left, t);
    if (i < n - 1) f_right = side_integral_value(net, i, Side::right, t);
  } else {
    const int e = sink.index;
    if (e < 0 || e >= net.edge_count())
      throw std::out_of_range("aggregate_time: edge out of range");
    if (!(sink.offset > 0.0) || !(sink.offset < net.length(e)))
      throw std::domain_error("aggregate_time: edge offset must be strictly interior");
    x = net.position(e) + sink.offset;
    w_left = net.prefix_weight(0, e)(t);
    w_right = net.prefix_weight(e + 1, n - 1)(t);
    f_left = side_integral_value(net, e, Side::left, t);
    f_right = side_integral_value(net, e, Side::right, t);
  }
  return net.tau() * x * (w_left - w_right) + f_left + f_right;
}

}  // namespace pathregret
