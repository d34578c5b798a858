#include "pathregret/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathregret/parametric.hpp"

namespace pathregret {

std::vector<RegretPiece> regret_pieces(const Network& net, int edge,
                                       const PiecewisePoly& F_left,
                                       const PiecewisePoly& F_right,
                                       const PiecewisePoly& opt) {
  const int n = net.vertex_count();
  const LinearFn wdiff =
      net.prefix_weight(0, edge) - net.prefix_weight(edge + 1, n - 1);
  const double b2 = net.tau() * wdiff.slope;
  const double b4 = net.tau() * wdiff.intercept;

  const PiecewisePoly s = pw_add(pw_add(F_left, F_right), pw_negate(opt));
  std::vector<RegretPiece> out;
  out.reserve(s.piece_count());
  for (int k = 0; k < s.piece_count(); ++k) {
    const QuadFn& q = s.poly(k);
    RegretPiece p;
    p.edge = edge;
    p.window = s.piece_interval(k);
    p.b1 = q.a2;
    p.b2 = b2;
    p.b3 = q.a1;
    p.b4 = b4;
    p.b5 = q.a0;
    out.push_back(p);
  }
  return out;
}

PiecewisePoly piece_worst_regret(const RegretPiece& p, Interval extent) {
  const double t0 = p.window.lo, t1 = p.window.hi;
  const auto line_at = [&](double t) {
    return QuadFn{0.0, p.b2 * t + p.b4, (p.b1 * t + p.b3) * t + p.b5};
  };

  if (p.b1 >= 0.0) {
    // convex (or linear) in t: the max sits at a window endpoint for every x
    const PartialQuad fns[2] = {{line_at(t0), extent, 0}, {line_at(t1), extent, 1}};
    return upper_envelope(std::span<const PartialQuad>(fns, 2), extent);
  }

  // concave in t: clamp the vertex t*(x) = -(b2 x + b3) / (2 b1) into the window
  const QuadFn vertex_val{-p.b2 * p.b2 / (4.0 * p.b1),
                          p.b4 - p.b2 * p.b3 / (2.0 * p.b1),
                          p.b5 - p.b3 * p.b3 / (4.0 * p.b1)};
  if (p.b2 == 0.0) {
    const double ts = -p.b3 / (2.0 * p.b1);
    const QuadFn q = ts < t0 ? line_at(t0) : (ts > t1 ? line_at(t1) : vertex_val);
    return PiecewisePoly::single(q, extent);
  }

  const double x_at_t0 = -(2.0 * p.b1 * t0 + p.b3) / p.b2;
  const double x_at_t1 = -(2.0 * p.b1 * t1 + p.b3) / p.b2;
  struct Region {
    double hi;
    QuadFn q;
  };
  // t*(x) has slope -b2/(2 b1); with b1 < 0 its sign is the sign of b2
  std::vector<Region> regions;
  if (p.b2 > 0.0) {
    regions = {{x_at_t0, line_at(t0)}, {x_at_t1, vertex_val},
               {std::numeric_limits<double>::infinity(), line_at(t1)}};
  } else {
    regions = {{x_at_t1, line_at(t1)}, {x_at_t0, vertex_val},
               {std::numeric_limits<double>::infinity(), line_at(t0)}};
  }

  std::vector<double> bps{extent.lo};
  std::vector<QuadFn> polys;
  const double xtol = kRelTol * std::max({1.0, std::abs(extent.lo), std::abs(extent.hi)});
  for (const auto& r : regions) {
    const double hi = std::min(r.hi, extent.hi);
    if (hi - bps.back() > xtol) {
      bps.push_back(hi);
      polys.push_back(r.q);
    }
  }
  if (polys.empty() || bps.back() < extent.hi) {
    // degenerate clipping: make sure the extent is covered
    if (polys.empty()) {
      bps = {extent.lo, extent.hi};
      polys = {regions.back().q};
    } else {
      bps.back() = extent.hi;
    }
  }
  return PiecewisePoly(std::move(bps), std::move(polys));
}

EdgeRegret build_edge_regret(const Network& net, int edge,
                             const PiecewisePoly& F_left,
                             const PiecewisePoly& F_right,
                             const PiecewisePoly& opt) {
  EdgeRegret er;
  er.pieces = regret_pieces(net, edge, F_left, F_right, opt);
  const Interval extent{net.position(edge), net.position(edge + 1)};

  std::vector<PartialQuad> fns;
  fns.reserve(3 * er.pieces.size());
  for (size_t j = 0; j < er.pieces.size(); ++j) {
    const PiecewisePoly g = piece_worst_regret(er.pieces[j], extent);
    for (int k = 0; k < g.piece_count(); ++k)
      fns.push_back({g.poly(k), g.piece_interval(k), static_cast<int>(j)});
  }
  er.envelope = upper_envelope(fns, extent);
  er.best = minimize_on(er.envelope, extent);
  return er;
}

double max_regret_at_vertex(const Network& net, int i,
                            const PiecewisePoly* left_integral,
                            const PiecewisePoly* right_integral,
                            const PiecewisePoly& opt) {
  const int n = net.vertex_count();
  const Interval T = net.horizon();
  const LinearFn wdiff =
      net.prefix_weight(0, i - 1) - net.prefix_weight(i + 1, n - 1);
  PiecewisePoly r =
      PiecewisePoly::single(QuadFn::linear(wdiff * (net.tau() * net.position(i))), T);
  if (left_integral) r = pw_add(r, *left_integral);
  if (right_integral) r = pw_add(r, *right_integral);
  r = pw_add(r, pw_negate(opt));
  return maximize_on(r, T).value;
}

Analysis analyze(const Network& net) {
  Analysis a;
  const int m = net.edge_count();
  a.F_left.resize(m);
  a.F_right.resize(m);
  for (int e = 0; e < m; ++e) {
    a.F_left[e] = side_integral(net, e, Side::left);
    a.F_right[e] = side_integral(net, e, Side::right);
  }
  a.opt = min_aggregate(net, a.F_left, a.F_right);

  a.edges.reserve(m);
  for (int e = 0; e < m; ++e)
    a.edges.push_back(build_edge_regret(net, e, a.F_left[e], a.F_right[e], a.opt));

  const int n = net.vertex_count();
  a.vertex_mr.reserve(n);
  for (int i = 0; i < n; ++i)
    a.vertex_mr.push_back(max_regret_at_vertex(
        net, i, i > 0 ? &a.F_left[i - 1] : nullptr,
        i < n - 1 ? &a.F_right[i] : nullptr, a.opt));
  return a;
}

SolveResult solve(const Network& net, const Analysis& a) {
  struct Candidate {
    double value;
    double coord;
    bool vertex;
    int index;
  };
  std::vector<Candidate> cands;
  const int n = net.vertex_count();
  for (int i = 0; i < n; ++i)
    cands.push_back({a.vertex_mr[i], net.position(i), true, i});
  for (int e = 0; e < net.edge_count(); ++e)
    cands.push_back({a.edges[e].best.value, a.edges[e].best.arg, false, e});

  // smallest value first; candidates within 1e-9 relative of the minimum tie,
  // and ties go to the smaller coordinate, then to vertex candidates
  const double postol = tol_for(0.0, net.total_length());
  double min_value = cands.front().value;
  for (const auto& c : cands) min_value = std::min(min_value, c.value);
  const double vtol = kRelTol * std::max(1.0, std::abs(min_value));
  const Candidate* best = nullptr;
  for (const auto& c : cands) {
    if (c.value > min_value + vtol) continue;
    if (!best || c.coord < best->coord - postol ||
        (std::abs(c.coord - best->coord) <= postol && c.vertex && !best->vertex))
      best = &c;
  }

  SolveResult res;
  res.max_regret = min_value;
  if (best->vertex) {
    res.sink = SinkLocation::at_vertex(best->index);
  } else {
    const int e = best->index;
    const double off = best->coord - net.position(e);
    if (off <= postol)
      res.sink = SinkLocation::at_vertex(e);
    else if (off >= net.length(e) - postol)
      res.sink = SinkLocation::at_vertex(e + 1);
    else
      res.sink = SinkLocation::on_edge(e, off);
  }

  auto& d = res.diag;
  for (int e = 0; e < net.edge_count(); ++e) {
    d.pieces_f_left.push_back(a.F_left[e].piece_count());
    d.pieces_f_right.push_back(a.F_right[e].piece_count());
    d.pieces_mr_edge.push_back(a.edges[e].envelope.piece_count());
    d.mr_edge_min.push_back(a.edges[e].best.value);
    d.mr_edge_argmin.push_back(a.edges[e].best.arg);
  }
  d.pieces_opt = a.opt.piece_count();
  d.mr_vertex = a.vertex_mr;
  return res;
}

SolveResult solve(const Network& net) { return solve(net, analyze(net)); }

double max_regret_at(const Network& net, const Analysis& a, double x) {
  const SinkLocation loc = locate(net, x);
  if (loc.kind == SinkLocation::Kind::vertex) return a.vertex_mr[loc.index];
  return a.edges[loc.index].envelope(x);
}

}  // namespace pathregret
