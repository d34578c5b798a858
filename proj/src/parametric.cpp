#include "pathregret/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pathregret/errors.hpp"

namespace pathregret {

namespace {

// Member m's arrival function written as f_m(t, z) = slope_m * z + b_m(t),
// with b_m linear in t.
LinearFn z_intercept_fn(const SideFamily& fam, int m) {
  const double s = fam.slope[m];
  const LinearFn& d = fam.dom_start[m];
  return {-s * d.slope, fam.offset[m] - s * d.intercept};
}

// The supply level at which the steeper member `m` overtakes the shallower
// member `mp`, as partially defined linear functions of t covering `T`.
//
// Let g(t) = f_m - f_mp evaluated at m's domain start. Where g >= 0 the
// takeover happens right at the domain start; where g < 0 it happens at the
// interior crossing of the two lines (clamped by the total supply), or never
// for parallel lines, which is encoded as the outer boundary.
void append_takeover_pieces(const SideFamily& fam, Interval T, int m, int mp,
                            std::vector<PartialQuad>& out) {
  const double sm = fam.slope[m], sp = fam.slope[mp];
  const LinearFn bm = z_intercept_fn(fam, m);
  const LinearFn bp = z_intercept_fn(fam, mp);
  const LinearFn& dm = fam.dom_start[m];

  // g(t) = f_m(t, D_m(t)) - f_mp(t, D_m(t))
  const LinearFn g = (bm - bp) + dm * (sm - sp);

  const double gtol = kRelTol * std::max({1.0, std::abs(g(T.lo)), std::abs(g(T.hi))});
  std::vector<std::pair<Interval, bool>> regions;  // (subinterval, g >= 0 there)
  if (std::abs(g.slope) * std::max(std::abs(T.lo), std::abs(T.hi)) <= gtol) {
    regions.push_back({T, g(T.mid()) >= 0.0});
  } else {
    const double r = -g.intercept / g.slope;
    if (r <= T.lo || r >= T.hi) {
      regions.push_back({T, g(T.mid()) >= 0.0});
    } else {
      regions.push_back({{T.lo, r}, g(0.5 * (T.lo + r)) >= 0.0});
      regions.push_back({{r, T.hi}, g(0.5 * (r + T.hi)) >= 0.0});
    }
  }

  for (const auto& [sub, boundary_case] : regions) {
    if (!(sub.width() > 0.0)) continue;
    if (boundary_case) {
      out.push_back({QuadFn::linear(dm), sub, mp});
      continue;
    }
    if (sm == sp) {
      // parallel and below: never overtakes; encode as the outer boundary
      out.push_back({QuadFn::linear(fam.total), sub, mp});
      continue;
    }
    // interior crossing z*(t), clamped by the total supply
    const LinearFn zs = (bp - bm) * (1.0 / (sm - sp));
    const LinearFn diff = zs - fam.total;
    const double dtol =
        kRelTol * std::max({1.0, std::abs(diff(sub.lo)), std::abs(diff(sub.hi))});
    if (std::abs(diff.slope) * std::max(std::abs(sub.lo), std::abs(sub.hi)) <= dtol) {
      out.push_back({QuadFn::linear(diff(sub.mid()) <= 0.0 ? zs : fam.total), sub, mp});
      continue;
    }
    const double r = -diff.intercept / diff.slope;
    if (r <= sub.lo || r >= sub.hi) {
      out.push_back({QuadFn::linear(diff(sub.mid()) <= 0.0 ? zs : fam.total), sub, mp});
    } else {
      const Interval a{sub.lo, r}, b{r, sub.hi};
      out.push_back({QuadFn::linear(diff(a.mid()) <= 0.0 ? zs : fam.total), a, mp});
      out.push_back({QuadFn::linear(diff(b.mid()) <= 0.0 ? zs : fam.total), b, mp});
    }
  }
}

// Symbolic z-boundary between two consecutive realizers of the arrival
// envelope, valid throughout the candidate subinterval containing t_mid.
LinearFn takeover_fn(const SideFamily& fam, int prev, int next, double t_mid) {
  const double sp = fam.slope[prev], sn = fam.slope[next];
  const LinearFn& dn = fam.dom_start[next];
  if (sn == sp) return dn;  // equal bottleneck: takeover at the domain start
  const LinearFn zs = (z_intercept_fn(fam, prev) - z_intercept_fn(fam, next)) *
                      (1.0 / (sn - sp));
  return zs(t_mid) >= dn(t_mid) ? zs : dn;
}

// Integral of member m between the linear-in-t supply levels A and B.
QuadFn segment_integral(const SideFamily& fam, int m, const LinearFn& A,
                        const LinearFn& B) {
  const double s = fam.slope[m];
  const LinearFn diff = B - A;
  const LinearFn sum = B + A;
  return mul(diff, sum) * (0.5 * s) + mul(diff, z_intercept_fn(fam, m));
}

// Crossing parameters of two piecewise-linear functions over their shared
// domain (members appear and disappear from the arrival sequence where their
// takeover levels cross, which need not be a breakpoint of either envelope).
void append_crossings(const PiecewisePoly& a, const PiecewisePoly& b,
                      std::vector<double>& cand) {
  const Interval dom = a.domain();
  const auto& ba = a.breakpoints();
  const auto& bb = b.breakpoints();
  size_t ia = 0, ib = 0;
  double lo = dom.lo;
  while (lo < dom.hi) {
    const double hi = std::min(ba[ia + 1], bb[ib + 1]);
    if (hi > lo) {
      const QuadFn d = a.poly(static_cast<int>(ia)) - b.poly(static_cast<int>(ib));
      double rs[2];
      const int nr = quad_roots_in(d, lo, hi, rs);
      for (int k = 0; k < nr; ++k)
        if (rs[k] > dom.lo && rs[k] < dom.hi) cand.push_back(rs[k]);
    }
    const bool advance_a = ba[ia + 1] <= hi && ia + 2 < ba.size();
    const bool advance_b = bb[ib + 1] <= hi && ib + 2 < bb.size();
    if (!advance_a && !advance_b) break;
    if (advance_a) ++ia;
    if (advance_b) ++ib;
    lo = hi;
  }
}

}  // namespace

PiecewisePoly takeover_envelope(const SideFamily& fam, Interval horizon, int member) {
  if (member < 0 || member >= fam.size())
    throw std::out_of_range("takeover_envelope: member index out of range");
  if (member == 0)
    return PiecewisePoly::single(QuadFn::linear(fam.total), horizon);
  std::vector<PartialQuad> fns;
  fns.reserve(3 * member);
  for (int mp = 0; mp < member; ++mp)
    append_takeover_pieces(fam, horizon, member, mp, fns);
  return upper_envelope(fns, horizon);
}

PiecewisePoly takeover_envelope(const Network& net, int edge, Side side, int member) {
  return takeover_envelope(make_side_family(net, edge, side), net.horizon(), member);
}

PiecewisePoly side_integral(const Network& net, int edge, Side side) {
  const SideFamily fam = make_side_family(net, edge, side);
  const Interval T = net.horizon();
  const double wtol = kRelTol * std::max({1.0, std::abs(T.lo), std::abs(T.hi), T.width()});

  // Step 1: candidate breakpoints. A superset of the true breakpoints is
  // harmless (identical adjacent quadratics merge), missing one is not, so we
  // gather (a) breakpoints of every member's takeover envelope, (b) pairwise
  // crossings of the takeover envelopes (a member enters or leaves the arrival
  // sequence when its takeover level meets another member's, which need not be
  // a breakpoint of either envelope alone), and (c) roots of the weights.
  std::vector<double> cand{T.lo, T.hi};
  std::vector<PiecewisePoly> zs;
  zs.reserve(std::max(fam.size() - 1, 0));
  for (int m = 1; m < fam.size(); ++m) {
    zs.push_back(takeover_envelope(fam, T, m));
    const auto& b = zs.back().breakpoints();
    cand.insert(cand.end(), b.begin() + 1, b.end() - 1);
  }
  const PiecewisePoly zero_level = PiecewisePoly::constant(0.0, T);
  for (size_t i = 0; i < zs.size(); ++i) {
    append_crossings(zs[i], zero_level, cand);
    for (size_t j = i + 1; j < zs.size(); ++j) append_crossings(zs[i], zs[j], cand);
  }
  for (int m = 0; m < fam.size(); ++m) {
    const LinearFn& w = net.weight(fam.vertex[m]);
    if (w.slope != 0.0) {
      const double r = -w.intercept / w.slope;
      if (r > T.lo && r < T.hi) cand.push_back(r);
    }
  }
  std::sort(cand.begin(), cand.end());
  std::vector<double> cuts{T.lo};
  for (double c : cand)
    if (c - cuts.back() > wtol) cuts.push_back(c);
  if (cuts.size() > 1 && T.hi - cuts.back() <= wtol)
    cuts.back() = T.hi;
  else
    cuts.push_back(T.hi);

  // Step 2: reconstruct the quadratic on each candidate subinterval from the
  // midpoint arrival sequence and the symbolic takeover boundaries.
  std::vector<double> bps{T.lo};
  std::vector<QuadFn> polys;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    const double tm = 0.5 * (a + b);
    const auto seq = envelope_sequence(fam, tm);

    QuadFn H{};
    if (!seq.empty()) {
      std::vector<LinearFn> bounds;
      bounds.reserve(seq.size() + 1);
      bounds.push_back(LinearFn{});
      for (size_t h = 1; h < seq.size(); ++h)
        bounds.push_back(takeover_fn(fam, seq[h - 1].member, seq[h].member, tm));
      bounds.push_back(fam.total);

      const double ordtol = kRelTol * std::max(1.0, fam.total(tm));
      for (size_t h = 0; h + 1 < bounds.size(); ++h) {
        if (bounds[h](tm) > bounds[h + 1](tm) + ordtol)
          throw NumericError(
              "side_integral: breakpoint ordering violated on [" +
              std::to_string(a) + ", " + std::to_string(b) + "] at edge " +
              std::to_string(edge));
      }
      for (size_t h = 0; h < seq.size(); ++h)
        H = H + segment_integral(fam, seq[h].member, bounds[h], bounds[h + 1]);
    }
    polys.push_back(H);
    bps.push_back(b);
  }
  return PiecewisePoly(std::move(bps), std::move(polys));
}

PiecewisePoly aggregate_at_vertex(const Network& net, int i,
                                  const PiecewisePoly* left_integral,
                                  const PiecewisePoly* right_integral) {
  const int n = net.vertex_count();
  if (i < 0 || i >= n) throw std::out_of_range("aggregate_at_vertex: index out of range");
  const Interval T = net.horizon();

  const LinearFn wdiff =
      net.prefix_weight(0, i - 1) - net.prefix_weight(i + 1, n - 1);
  PiecewisePoly out =
      PiecewisePoly::single(QuadFn::linear(wdiff * (net.tau() * net.position(i))), T);

  if (i > 0) {
    const PiecewisePoly local =
        left_integral ? PiecewisePoly{} : side_integral(net, i - 1, Side::left);
    out = pw_add(out, left_integral ? *left_integral : local);
  }
  if (i < n - 1) {
    const PiecewisePoly local =
        right_integral ? PiecewisePoly{} : side_integral(net, i, Side::right);
    out = pw_add(out, right_integral ? *right_integral : local);
  }
  return out;
}

PiecewisePoly aggregate_at_vertex(const Network& net, int i) {
  return aggregate_at_vertex(net, i, nullptr, nullptr);
}

PiecewisePoly min_aggregate(const Network& net,
                            const std::vector<PiecewisePoly>& left_integrals,
                            const std::vector<PiecewisePoly>& right_integrals) {
  const int n = net.vertex_count();
  std::vector<PartialQuad> fns;
  for (int i = 0; i < n; ++i) {
    const PiecewisePoly phi = aggregate_at_vertex(
        net, i, i > 0 ? &left_integrals[i - 1] : nullptr,
        i < n - 1 ? &right_integrals[i] : nullptr);
    for (int k = 0; k < phi.piece_count(); ++k)
      fns.push_back({phi.poly(k), phi.piece_interval(k), i});
  }
  return lower_envelope(fns, net.horizon());
}

PiecewisePoly min_aggregate(const Network& net) {
  const int m = net.edge_count();
  std::vector<PiecewisePoly> fl(m), fr(m);
  for (int e = 0; e < m; ++e) {
    fl[e] = side_integral(net, e, Side::left);
    fr[e] = side_integral(net, e, Side::right);
  }
  return min_aggregate(net, fl, fr);
}

}  // namespace pathregret
