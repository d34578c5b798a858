#include "pathregret/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pathregret/errors.hpp"

namespace pathregret {

namespace {

struct Line {
  double slope, icept;
  double operator()(double z) const { return slope * z + icept; }
};

// Exact integral of max over fully defined lines on [a, b], walking takeover
// points left to right.
double integrate_max_of_lines(const std::vector<Line>& lines, double a, double b) {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  double z = a;
  const int k = static_cast<int>(lines.size());
  for (int guard = 0; guard <= 2 * k && z < b; ++guard) {
    int cur = 0;
    for (int l = 1; l < k; ++l) {
      const double vc = lines[cur](z), vl = lines[l](z);
      // near-ties go to the steeper line so the walk cannot stall on the
      // shallower one when z sits on a rounded crossing
      const double tolv = 1e-12 * std::max({1.0, std::abs(vc), std::abs(vl)});
      if (vl > vc + tolv || (vl >= vc - tolv && lines[l].slope > lines[cur].slope))
        cur = l;
    }
    double next = b;
    for (int l = 0; l < k; ++l) {
      if (lines[l].slope <= lines[cur].slope) continue;
      const double zc = (lines[cur].icept - lines[l].icept) /
                        (lines[l].slope - lines[cur].slope);
      if (zc > z && zc < next) next = zc;
    }
    total += 0.5 * lines[cur].slope * (next * next - z * z) +
             lines[cur].icept * (next - z);
    z = next;
  }
  return total;
}

}  // namespace

double oracle_side_integral(const Network& net, int edge, Side side, double t) {
  const double tau = net.tau();
  double total = 0.0;
  if (side == Side::left) {
    for (int j = edge; j >= 0; --j) {
      const double a = net.prefix_weight(j + 1, edge)(t);
      const double b = net.prefix_weight(j, edge)(t);
      if (!(b > a)) continue;
      std::vector<Line> lines;
      for (int h = j; h <= edge; ++h) {
        const double s = 1.0 / net.range_min_capacity(h, edge);
        lines.push_back({s, -tau * net.position(h) - s * net.prefix_weight(h + 1, edge)(t)});
      }
      total += integrate_max_of_lines(lines, a, b);
    }
  } else {
    const int n = net.vertex_count();
    for (int j = edge + 1; j < n; ++j) {
      const double a = net.prefix_weight(edge + 1, j - 1)(t);
      const double b = net.prefix_weight(edge + 1, j)(t);
      if (!(b > a)) continue;
      std::vector<Line> lines;
      for (int h = edge + 1; h <= j; ++h) {
        const double s = 1.0 / net.range_min_capacity(edge, h - 1);
        lines.push_back({s, tau * net.position(h) - s * net.prefix_weight(edge + 1, h - 1)(t)});
      }
      total += integrate_max_of_lines(lines, a, b);
    }
  }
  return total;
}

double oracle_aggregate_time(const Network& net, double x, double t) {
  const SinkLocation loc = locate(net, x);
  const int n = net.vertex_count();
  double wl, wr, fl = 0.0, fr = 0.0, pos;
  if (loc.kind == SinkLocation::Kind::vertex) {
    const int i = loc.index;
    pos = net.position(i);
    wl = net.prefix_weight(0, i - 1)(t);
    wr = net.prefix_weight(i + 1, n - 1)(t);
    if (i > 0) fl = oracle_side_integral(net, i - 1, Side::left, t);
    if (i < n - 1) fr = oracle_side_integral(net, i, Side::right, t);
  } else {
    const int e = loc.index;
    pos = x;
    wl = net.prefix_weight(0, e)(t);
    wr = net.prefix_weight(e + 1, n - 1)(t);
    fl = oracle_side_integral(net, e, Side::left, t);
    fr = oracle_side_integral(net, e, Side::right, t);
  }
  return net.tau() * pos * (wl - wr) + fl + fr;
}

std::pair<double, double> oracle_edge_affine(const Network& net, int edge, double t) {
  const int n = net.vertex_count();
  const double wl = net.prefix_weight(0, edge)(t);
  const double wr = net.prefix_weight(edge + 1, n - 1)(t);
  const double A = net.tau() * (wl - wr);
  const double B = oracle_side_integral(net, edge, Side::left, t) +
                   oracle_side_integral(net, edge, Side::right, t);
  return {A, B};
}

double oracle_opt(const Network& net, double t) {
  double best = oracle_aggregate_time(net, net.position(0), t);
  for (int i = 1; i < net.vertex_count(); ++i)
    best = std::min(best, oracle_aggregate_time(net, net.position(i), t));
  return best;
}

double oracle_max_regret(const Network& net, double x, int t_grid_size,
                         int refine_iters) {
  const Interval T = net.horizon();
  const int g = std::max(t_grid_size, 2);
  const auto regret = [&](double t) {
    return oracle_aggregate_time(net, x, t) - oracle_opt(net, t);
  };

  std::vector<double> ts(g), vals(g);
  for (int k = 0; k < g; ++k) {
    ts[k] = T.lo + (T.hi - T.lo) * k / (g - 1);
    vals[k] = regret(ts[k]);
  }
  double best = *std::max_element(vals.begin(), vals.end());

  constexpr double invphi = 0.6180339887498949;
  for (int k = 0; k < g; ++k) {
    const bool local_max = (k == 0 || vals[k] >= vals[k - 1]) &&
                           (k == g - 1 || vals[k] >= vals[k + 1]);
    if (!local_max) continue;
    double lo = ts[std::max(k - 1, 0)], hi = ts[std::min(k + 1, g - 1)];
    double m1 = hi - invphi * (hi - lo), m2 = lo + invphi * (hi - lo);
    double f1 = regret(m1), f2 = regret(m2);
    for (int it = 0; it < refine_iters; ++it) {
      if (f1 < f2) {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + invphi * (hi - lo);
        f2 = regret(m2);
      } else {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - invphi * (hi - lo);
        f1 = regret(m1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

namespace {

struct RatePiece {
  double until;  // absolute end time; starts at the previous piece's end
  double rate;
};

// Outflow schedule of one vertex: initial queue q0 drains at capacity c_out,
// fed by the (gap-free, from time 0) inflow schedule. Steps never exceed
// max_step and always snap to rate changes and queue-drain events, so rates
// are exact within each step.
std::vector<RatePiece> vertex_outflow(double q0, double c_out,
                                      const std::vector<RatePiece>& inflow,
                                      double max_step, double qeps) {
  std::vector<RatePiece> out;
  double tc = 0.0, q = q0;
  const auto emit = [&](double until, double rate) {
    if (!(until > tc)) return;
    if (!out.empty() && out.back().rate == rate)
      out.back().until = until;
    else
      out.push_back({until, rate});
    tc = until;
  };

  size_t pi = 0;
  while (true) {
    const bool has_in = pi < inflow.size();
    const double seg_end = has_in ? inflow[pi].until : tc + (q > qeps ? q / c_out : 0.0);
    const double r_in = has_in ? inflow[pi].rate : 0.0;
    if (!has_in && q <= qeps) break;

    while (tc < seg_end) {
      double step_end = std::min(seg_end, tc + max_step);
      if (q > qeps) {
        const double dq = r_in - c_out;
        if (dq < 0.0) {
          const double t_empty = tc + q / (-dq);
          if (t_empty < step_end) step_end = t_empty;
        }
        if (!(step_end > tc)) {  // instant drain below resolution
          q = 0.0;
          continue;
        }
        q = std::max(0.0, q + (r_in - c_out) * (step_end - tc));
        emit(step_end, c_out);
      } else if (r_in > c_out) {
        q += (r_in - c_out) * (step_end - tc);
        emit(step_end, c_out);
      } else {
        q = 0.0;
        emit(step_end, r_in);
      }
    }
    if (has_in) ++pi;
  }
  return out;
}

// Completion time for one side of the sink: vertices listed outward-in, each
// with the capacity and length of the edge toward the sink.
double side_completion(const Network& net, const std::vector<int>& verts,
                       const std::vector<double>& caps,
                       const std::vector<double>& dists, double t, double dt) {
  double supply_total = 0.0;
  for (int v : verts) supply_total += net.weight(v)(t);
  const double qeps = 1e-12 * std::max(1.0, supply_total);
  if (supply_total <= qeps) return 0.0;

  std::vector<RatePiece> inflow;
  double completion = 0.0;
  for (size_t k = 0; k < verts.size(); ++k) {
    const auto out = vertex_outflow(net.weight(verts[k])(t), caps[k], inflow, dt, qeps);
    const double delay = net.tau() * dists[k];
    inflow.clear();
    if (!out.empty()) {
      double last_active = 0.0;
      if (delay > 0.0) inflow.push_back({delay, 0.0});
      for (const auto& p : out) {
        inflow.push_back({p.until + delay, p.rate});
        if (p.rate > 0.0) last_active = p.until + delay;
      }
      completion = last_active;
    }
  }
  return completion;
}

}  // namespace

double simulate_completion(const Network& net, const SinkLocation& sink, double t,
                           double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_completion: dt must be positive");
  const int n = net.vertex_count();

  std::vector<int> lv, rv;
  std::vector<double> lc, rc, ld, rd;
  if (sink.kind == SinkLocation::Kind::vertex) {
    const int i = sink.index;
    for (int j = 0; j < i; ++j) {
      lv.push_back(j);
      lc.push_back(net.capacity(j));
      ld.push_back(net.length(j));
    }
    for (int j = n - 1; j > i; --j) {
      rv.push_back(j);
      rc.push_back(net.capacity(j - 1));
      rd.push_back(net.length(j - 1));
    }
  } else {
    const int e = sink.index;
    const double x = net.position(e) + sink.offset;
    for (int j = 0; j <= e; ++j) {
      lv.push_back(j);
      lc.push_back(net.capacity(j));
      ld.push_back(j == e ? x - net.position(e) : net.length(j));
    }
    for (int j = n - 1; j > e; --j) {
      rv.push_back(j);
      rc.push_back(net.capacity(j - 1));
      rd.push_back(j - 1 == e ? net.position(e + 1) - x : net.length(j - 1));
    }
  }
  const double left = side_completion(net, lv, lc, ld, t, dt);
  const double right = side_completion(net, rv, rc, rd, t, dt);
  return std::max(left, right);
}

double simulate_completion_refined(const Network& net, const SinkLocation& sink,
                                   double t) {
  double dt = 1.0;
  double prev = simulate_completion(net, sink, t, dt);
  for (int k = 0; k < 24; ++k) {
    dt *= 0.5;
    const double cur = simulate_completion(net, sink, t, dt);
    if (std::abs(cur - prev) < 1e-6) return cur;
    prev = cur;
  }
  throw NumericError("simulate_completion_refined: no convergence after 24 halvings");
}

}  // namespace pathregret
