#pragma once

#include <span>
#include <vector>

#include "pathregret/types.hpp"

namespace pathregret {

/// A polynomial of degree at most two restricted to a subinterval. Families of
/// these are the inputs to the envelope operations; `tag` identifies the source
/// function and is carried through to the envelope pieces.
struct PartialQuad {
  QuadFn poly;
  Interval dom;
  int tag = -1;
};

/// Maximal piecewise polynomial of degree at most two over a closed interval.
///
/// Stored as m+1 ordered breakpoints and m piece polynomials, so pieces are
/// contiguous and gap-free by construction. Adjacent pieces with identical
/// polynomials and tags are merged on construction (maximality). Values are
/// immutable after construction.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> breakpoints, std::vector<QuadFn> polys,
                std::vector<int> tags = {});

  static PiecewisePoly constant(double value, Interval domain);
  static PiecewisePoly single(const QuadFn& poly, Interval domain, int tag = -1);

  bool valid() const { return !polys_.empty(); }
  int piece_count() const { return static_cast<int>(polys_.size()); }
  Interval domain() const { return {bps_.front(), bps_.back()}; }

  const std::vector<double>& breakpoints() const { return bps_; }
  const QuadFn& poly(int k) const { return polys_[k]; }
  int tag(int k) const { return tags_[k]; }
  Interval piece_interval(int k) const { return {bps_[k], bps_[k + 1]}; }

  /// Index of the piece containing y (right piece at interior breakpoints).
  int piece_index(double y) const;
  /// Index of the piece containing y, preferring the left piece at breakpoints.
  int piece_index_left(double y) const;

  double operator()(double y) const { return polys_[piece_index(y)](y); }
  double eval_left(double y) const { return polys_[piece_index_left(y)](y); }
  double eval_right(double y) const { return polys_[piece_index(y)](y); }

 private:
  std::vector<double> bps_;
  std::vector<QuadFn> polys_;
  std::vector<int> tags_;
};

/// Pointwise sum over a shared domain. Piece count is at most the sum of the
/// operands' piece counts and the merge runs in linear time.
PiecewisePoly pw_add(const PiecewisePoly& f, const PiecewisePoly& g);

PiecewisePoly pw_negate(const PiecewisePoly& f);

/// Adds a single global polynomial to every piece.
PiecewisePoly pw_add_poly(const PiecewisePoly& f, const QuadFn& q);

PiecewisePoly pw_scale(const PiecewisePoly& f, double k);

/// Exact integral over the whole domain (per-piece antiderivatives).
double integral_over_domain(const PiecewisePoly& f);

/// Counters backing the piece-count contract of pw_add. `bound_violations`
/// counts calls whose result exceeded m + m' pieces; it must stay zero.
struct PwAddStats {
  long long calls = 0;
  long long bound_violations = 0;
};
PwAddStats pw_add_stats();
void reset_pw_add_stats();

/// Pointwise maximum (resp. minimum) of a family of partially defined
/// polynomials over `target`. Every point of `target` must be covered by at
/// least one input domain. Piece tags record which input realizes each piece.
/// Empty-domain inputs are dropped; an empty family is an error.
PiecewisePoly upper_envelope(std::span<const PartialQuad> fns, Interval target);
PiecewisePoly lower_envelope(std::span<const PartialQuad> fns, Interval target);

/// Convenience overloads taking the target to be the hull of the input domains.
PiecewisePoly upper_envelope(std::span<const PartialQuad> fns);
PiecewisePoly lower_envelope(std::span<const PartialQuad> fns);

struct Extremum {
  double arg = 0.0;
  double value = 0.0;
};

/// Exact extremum over `over` (a subinterval of f's domain): per piece the
/// endpoints and, when curvature is favorable, the interior vertex are
/// candidates. Ties are broken toward the smaller coordinate.
Extremum minimize_on(const PiecewisePoly& f, Interval over);
Extremum maximize_on(const PiecewisePoly& f, Interval over);

/// Real roots of f inside (lo, hi), tolerance-inflated at the cell bounds,
/// clamped, sorted, deduplicated. Returns the number of roots written (0..2).
int quad_roots_in(const QuadFn& f, double lo, double hi, double out[2]);

}  // namespace pathregret
