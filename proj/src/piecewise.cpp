#include "pathregret/piecewise.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pathregret {

namespace {

std::atomic<long long> g_pw_add_calls{0};
std::atomic<long long> g_pw_add_violations{0};

// maximality is by polynomial; the first piece's tag survives a merge
bool piece_mergeable(const QuadFn& a, const QuadFn& b, double scale) {
  return coef_close(a, b, scale);
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints,
                             std::vector<QuadFn> polys, std::vector<int> tags) {
  if (breakpoints.size() != polys.size() + 1 || polys.empty())
    throw std::invalid_argument("piecewise: need m+1 breakpoints for m>=1 pieces");
  if (tags.empty()) tags.assign(polys.size(), -1);
  if (tags.size() != polys.size())
    throw std::invalid_argument("piecewise: tag count mismatch");
  for (size_t k = 0; k + 1 < breakpoints.size(); ++k)
    if (!(breakpoints[k] < breakpoints[k + 1]))
      throw std::invalid_argument("piecewise: breakpoints must be increasing");

  const double scale = std::max(std::abs(breakpoints.front()), std::abs(breakpoints.back()));
  bps_.push_back(breakpoints.front());
  for (size_t k = 0; k < polys.size(); ++k) {
    if (!polys_.empty() && piece_mergeable(polys_.back(), polys[k], scale)) {
      bps_.back() = breakpoints[k + 1];
    } else {
      polys_.push_back(polys[k]);
      tags_.push_back(tags[k]);
      bps_.push_back(breakpoints[k + 1]);
    }
  }
}

PiecewisePoly PiecewisePoly::constant(double value, Interval domain) {
  return single(QuadFn::constant(value), domain);
}

PiecewisePoly PiecewisePoly::single(const QuadFn& poly, Interval domain, int tag) {
  return PiecewisePoly({domain.lo, domain.hi}, {poly}, {tag});
}

int PiecewisePoly::piece_index(double y) const {
  auto it = std::upper_bound(bps_.begin(), bps_.end(), y);
  int k = static_cast<int>(it - bps_.begin()) - 1;
  return std::clamp(k, 0, piece_count() - 1);
}

int PiecewisePoly::piece_index_left(double y) const {
  auto it = std::lower_bound(bps_.begin(), bps_.end(), y);
  int k = static_cast<int>(it - bps_.begin()) - 1;
  return std::clamp(k, 0, piece_count() - 1);
}

PiecewisePoly pw_add(const PiecewisePoly& f, const PiecewisePoly& g) {
  if (!f.valid() || !g.valid()) throw std::invalid_argument("pw_add: invalid operand");
  const Interval df = f.domain(), dg = g.domain();
  const double dtol = tol_for(df.lo, df.hi, dg.hi);
  if (std::abs(df.lo - dg.lo) > dtol || std::abs(df.hi - dg.hi) > dtol)
    throw std::invalid_argument("pw_add: mismatched domains");

  const auto& bf = f.breakpoints();
  const auto& bg = g.breakpoints();
  std::vector<double> bps;
  bps.reserve(bf.size() + bg.size());
  size_t i = 0, j = 0;
  while (i < bf.size() || j < bg.size()) {
    double v;
    if (j == bg.size() || (i < bf.size() && bf[i] <= bg[j]))
      v = bf[i++];
    else
      v = bg[j++];
    if (bps.empty() || v - bps.back() > dtol) bps.push_back(v);
  }
  bps.front() = df.lo;
  bps.back() = df.hi;

  std::vector<QuadFn> polys;
  polys.reserve(bps.size() - 1);
  for (size_t k = 0; k + 1 < bps.size(); ++k) {
    const double mid = 0.5 * (bps[k] + bps[k + 1]);
    polys.push_back(f.poly(f.piece_index(mid)) + g.poly(g.piece_index(mid)));
  }
  PiecewisePoly out(std::move(bps), std::move(polys));

  g_pw_add_calls.fetch_add(1, std::memory_order_relaxed);
  if (out.piece_count() > f.piece_count() + g.piece_count())
    g_pw_add_violations.fetch_add(1, std::memory_order_relaxed);
  return out;
}

PiecewisePoly pw_negate(const PiecewisePoly& f) {
  std::vector<QuadFn> polys;
  std::vector<int> tags;
  for (int k = 0; k < f.piece_count(); ++k) {
    polys.push_back(-f.poly(k));
    tags.push_back(f.tag(k));
  }
  return PiecewisePoly(f.breakpoints(), std::move(polys), std::move(tags));
}

PiecewisePoly pw_add_poly(const PiecewisePoly& f, const QuadFn& q) {
  std::vector<QuadFn> polys;
  std::vector<int> tags;
  for (int k = 0; k < f.piece_count(); ++k) {
    polys.push_back(f.poly(k) + q);
    tags.push_back(f.tag(k));
  }
  return PiecewisePoly(f.breakpoints(), std::move(polys), std::move(tags));
}

PiecewisePoly pw_scale(const PiecewisePoly& f, double k) {
  std::vector<QuadFn> polys;
  std::vector<int> tags;
  for (int p = 0; p < f.piece_count(); ++p) {
    polys.push_back(f.poly(p) * k);
    tags.push_back(f.tag(p));
  }
  return PiecewisePoly(f.breakpoints(), std::move(polys), std::move(tags));
}

double integral_over_domain(const PiecewisePoly& f) {
  double total = 0.0;
  for (int k = 0; k < f.piece_count(); ++k) {
    const QuadFn& q = f.poly(k);
    const auto anti = [&](double y) {
      return ((q.a2 / 3.0 * y + q.a1 / 2.0) * y + q.a0) * y;
    };
    total += anti(f.breakpoints()[k + 1]) - anti(f.breakpoints()[k]);
  }
  return total;
}

PwAddStats pw_add_stats() {
  return {g_pw_add_calls.load(), g_pw_add_violations.load()};
}

void reset_pw_add_stats() {
  g_pw_add_calls.store(0);
  g_pw_add_violations.store(0);
}

int quad_roots_in(const QuadFn& f, double lo, double hi, double out[2]) {
  const double pad = kRelTol * std::max({1.0, std::abs(lo), std::abs(hi)});
  const double ymax = std::max(std::abs(lo), std::abs(hi));
  const double mag2 = std::abs(f.a2) * ymax * ymax;
  const double mag1 = std::abs(f.a1) * ymax;
  const double mag0 = std::abs(f.a0);
  const double mag = std::max({mag2, mag1, mag0, 1e-300});

  double roots[2];
  int nr = 0;
  if (mag2 <= 1e-14 * mag) {
    if (mag1 > 1e-14 * mag) roots[nr++] = -f.a0 / f.a1;
  } else {
    const double disc = f.a1 * f.a1 - 4.0 * f.a2 * f.a0;
    if (disc >= 0.0) {
      // citardauq pairing avoids cancellation in the small root
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (f.a1 + std::copysign(sq, f.a1));
      roots[nr++] = q / f.a2;
      if (q != 0.0)
        roots[nr++] = f.a0 / q;
      else
        roots[nr++] = 0.0;
    } else if (disc > -1e-12 * (f.a1 * f.a1 + 4.0 * std::abs(f.a2 * f.a0))) {
      // near-tangency: treat as a double root
      roots[nr++] = -f.a1 / (2.0 * f.a2);
    }
  }

  int n = 0;
  for (int k = 0; k < nr; ++k) {
    if (!std::isfinite(roots[k])) continue;
    if (roots[k] < lo - pad || roots[k] > hi + pad) continue;
    const double r = std::clamp(roots[k], lo, hi);
    if (n == 1 && std::abs(r - out[0]) <= pad) continue;
    out[n++] = r;
  }
  if (n == 2 && out[0] > out[1]) std::swap(out[0], out[1]);
  return n;
}

namespace {

struct Seg {
  QuadFn poly;
  double lo, hi;
  int tag;
};

// Merges two envelope fragments (each sorted, non-overlapping, possibly with
// gaps) into the pointwise max. Cells are delimited by the union of all
// segment boundaries; inside a cell coverage by either side is constant.
std::vector<Seg> merge_envelopes(const std::vector<Seg>& A, const std::vector<Seg>& B) {
  if (A.empty()) return B;
  if (B.empty()) return A;

  std::vector<double> cuts;
  cuts.reserve(2 * (A.size() + B.size()));
  for (const auto& s : A) {
    cuts.push_back(s.lo);
    cuts.push_back(s.hi);
  }
  for (const auto& s : B) {
    cuts.push_back(s.lo);
    cuts.push_back(s.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Seg> out;
  out.reserve(A.size() + B.size());
  auto emit = [&out](const QuadFn& p, double lo, double hi, int tag) {
    if (!(hi > lo)) return;
    if (!out.empty() && out.back().hi == lo && out.back().tag == tag &&
        out.back().poly == p) {
      out.back().hi = hi;
    } else {
      out.push_back({p, lo, hi, tag});
    }
  };

  size_t ia = 0, ib = 0;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    while (ia < A.size() && A[ia].hi <= lo) ++ia;
    while (ib < B.size() && B[ib].hi <= lo) ++ib;
    const Seg* sa = (ia < A.size() && A[ia].lo <= lo && A[ia].hi >= hi) ? &A[ia] : nullptr;
    const Seg* sb = (ib < B.size() && B[ib].lo <= lo && B[ib].hi >= hi) ? &B[ib] : nullptr;
    if (!sa && !sb) continue;
    if (sa && !sb) {
      emit(sa->poly, lo, hi, sa->tag);
      continue;
    }
    if (sb && !sa) {
      emit(sb->poly, lo, hi, sb->tag);
      continue;
    }

    const QuadFn d = sa->poly - sb->poly;
    double rs[2];
    const int nr = quad_roots_in(d, lo, hi, rs);
    double pts[4] = {lo, 0, 0, 0};
    int np = 1;
    for (int k = 0; k < nr; ++k)
      if (rs[k] > pts[np - 1]) pts[np++] = rs[k];
    if (hi > pts[np - 1]) pts[np++] = hi;

    for (int k = 0; k + 1 < np; ++k) {
      const double a = pts[k], b = pts[k + 1];
      const double m = 0.5 * (a + b);
      // coincidence over the whole subcell (3-point check, exact for deg <= 2)
      bool same = true;
      for (double y : {a, m, b}) {
        const double va = sa->poly(y), vb = sb->poly(y);
        if (std::abs(va - vb) > kRelTol * std::max({1.0, std::abs(va), std::abs(vb)})) {
          same = false;
          break;
        }
      }
      const Seg* win;
      if (same)
        win = (sa->tag <= sb->tag) ? sa : sb;
      else
        win = (sa->poly(m) > sb->poly(m)) ? sa : sb;
      emit(win->poly, a, b, win->tag);
    }
  }
  return out;
}

std::vector<Seg> envelope_rec(std::vector<Seg>& fns, size_t lo, size_t hi) {
  if (hi - lo == 1) return {fns[lo]};
  const size_t mid = lo + (hi - lo) / 2;
  auto left = envelope_rec(fns, lo, mid);
  auto right = envelope_rec(fns, mid, hi);
  return merge_envelopes(left, right);
}

PiecewisePoly envelope_impl(std::span<const PartialQuad> fns, Interval target,
                            bool upper) {
  if (target.empty() || target.width() <= 0.0)
    throw std::invalid_argument("envelope: degenerate target domain");

  std::vector<Seg> segs;
  segs.reserve(fns.size());
  for (const auto& f : fns) {
    const double lo = std::max(f.dom.lo, target.lo);
    const double hi = std::min(f.dom.hi, target.hi);
    if (!(hi > lo)) continue;  // empty after clipping: dropped silently
    segs.push_back({upper ? f.poly : -f.poly, lo, hi, f.tag});
  }
  if (segs.empty()) throw std::invalid_argument("envelope: empty function family");

  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  auto env = envelope_rec(segs, 0, segs.size());

  // stitch into a gap-free cover of the target
  const double wtol = kRelTol * std::max({1.0, std::abs(target.lo), std::abs(target.hi),
                                          target.width()});
  if (env.front().lo > target.lo + wtol || env.back().hi < target.hi - wtol)
    throw std::domain_error("envelope: family does not cover the target domain");
  env.front().lo = target.lo;
  env.back().hi = target.hi;
  for (size_t k = 0; k + 1 < env.size(); ++k) {
    if (env[k + 1].lo - env[k].hi > wtol)
      throw std::domain_error("envelope: family does not cover the target domain");
    env[k + 1].lo = env[k].hi;
  }

  std::vector<double> bps;
  std::vector<QuadFn> polys;
  std::vector<int> tags;
  bps.push_back(env.front().lo);
  for (const auto& s : env) {
    if (!(s.hi > bps.back())) continue;
    bps.push_back(s.hi);
    polys.push_back(upper ? s.poly : -s.poly);
    tags.push_back(s.tag);
  }
  return PiecewisePoly(std::move(bps), std::move(polys), std::move(tags));
}

Interval domain_hull(std::span<const PartialQuad> fns) {
  if (fns.empty()) throw std::invalid_argument("envelope: empty function family");
  Interval h{fns.front().dom.lo, fns.front().dom.hi};
  for (const auto& f : fns) {
    h.lo = std::min(h.lo, f.dom.lo);
    h.hi = std::max(h.hi, f.dom.hi);
  }
  return h;
}

}  // namespace

PiecewisePoly upper_envelope(std::span<const PartialQuad> fns, Interval target) {
  return envelope_impl(fns, target, true);
}

PiecewisePoly lower_envelope(std::span<const PartialQuad> fns, Interval target) {
  return envelope_impl(fns, target, false);
}

PiecewisePoly upper_envelope(std::span<const PartialQuad> fns) {
  return envelope_impl(fns, domain_hull(fns), true);
}

PiecewisePoly lower_envelope(std::span<const PartialQuad> fns) {
  return envelope_impl(fns, domain_hull(fns), false);
}

namespace {

Extremum extremum_on(const PiecewisePoly& f, Interval over, bool minimize) {
  if (!f.valid()) throw std::invalid_argument("extremum: invalid function");
  const Interval dom = f.domain();
  const double slack = tol_for(dom.lo, dom.hi, over.hi);
  if (over.lo < dom.lo - slack || over.hi > dom.hi + slack)
    throw std::domain_error("extremum: interval outside function domain");
  over.lo = dom.clamp(over.lo);
  over.hi = dom.clamp(over.hi);

  bool have = false;
  Extremum best{};
  auto consider = [&](double y, double v) {
    if (minimize) v = -v;
    if (!have) {
      best = {y, v};
      have = true;
      return;
    }
    const double tol = tol_for(v, best.value);
    if (v > best.value + tol) {
      best = {y, v};
    } else if (v >= best.value - tol && y < best.arg) {
      best.arg = y;
      best.value = std::max(best.value, v);
    }
  };

  for (int k = 0; k < f.piece_count(); ++k) {
    const double lo = std::max(f.breakpoints()[k], over.lo);
    const double hi = std::min(f.breakpoints()[k + 1], over.hi);
    if (lo > hi) continue;
    const QuadFn& q = f.poly(k);
    consider(lo, q(lo));
    consider(hi, q(hi));
    if (q.a2 != 0.0) {
      const bool favorable = minimize ? (q.a2 > 0.0) : (q.a2 < 0.0);
      if (favorable) {
        const double v = -q.a1 / (2.0 * q.a2);
        if (v > lo && v < hi) consider(v, q(v));
      }
    }
  }
  if (minimize) best.value = -best.value;
  return best;
}

}  // namespace

Extremum minimize_on(const PiecewisePoly& f, Interval over) {
  return extremum_on(f, over, true);
}

Extremum maximize_on(const PiecewisePoly& f, Interval over) {
  return extremum_on(f, over, false);
}

}  // namespace pathregret
