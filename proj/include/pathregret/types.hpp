#pragma once

#include <algorithm>
#include <cmath>

namespace pathregret {

/// Global relative tolerance used for all geometric comparisons.
inline constexpr double kRelTol = 1e-9;

/// Scale-aware comparison helpers. `scale` is an extra magnitude hint for
/// quantities whose natural size is not reflected in the operands themselves.
inline double tol_for(double a, double b, double scale = 1.0) {
  return kRelTol * std::max({1.0, std::abs(a), std::abs(b), std::abs(scale)});
}

inline bool approx_eq(double a, double b, double scale = 1.0) {
  return std::abs(a - b) <= tol_for(a, b, scale);
}

inline bool approx_le(double a, double b, double scale = 1.0) {
  return a <= b + tol_for(a, b, scale);
}

/// Relative error with a unit floor, |a-b| / max(1, |a|, |b|).
inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// A closed-by-default real interval. Closedness flags exist so callers can
/// express half-open ranges, but the piecewise machinery treats intervals as
/// closed and leaves boundary tie-breaking to the caller.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_lo = true;
  bool closed_hi = true;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }

  bool empty() const {
    if (lo > hi) return true;
    if (lo == hi) return !(closed_lo && closed_hi);
    return false;
  }
  bool is_point() const { return lo == hi && closed_lo && closed_hi; }

  bool contains(double y, double slack = 0.0) const {
    return y >= lo - slack && y <= hi + slack;
  }
  double clamp(double y) const { return std::min(hi, std::max(lo, y)); }
};

/// t |-> slope*t + intercept
struct LinearFn {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double t) const { return slope * t + intercept; }

  LinearFn operator+(const LinearFn& o) const {
    return {slope + o.slope, intercept + o.intercept};
  }
  LinearFn operator-(const LinearFn& o) const {
    return {slope - o.slope, intercept - o.intercept};
  }
  LinearFn operator-() const { return {-slope, -intercept}; }
  LinearFn operator*(double k) const { return {slope * k, intercept * k}; }
  LinearFn operator+(double c) const { return {slope, intercept + c}; }

  bool operator==(const LinearFn&) const = default;
};

/// y |-> a2*y^2 + a1*y + a0
struct QuadFn {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  double operator()(double y) const { return (a2 * y + a1) * y + a0; }

  static QuadFn constant(double c) { return {0.0, 0.0, c}; }
  static QuadFn linear(const LinearFn& f) { return {0.0, f.slope, f.intercept}; }

  bool is_linear() const { return a2 == 0.0; }

  QuadFn operator+(const QuadFn& o) const { return {a2 + o.a2, a1 + o.a1, a0 + o.a0}; }
  QuadFn operator-(const QuadFn& o) const { return {a2 - o.a2, a1 - o.a1, a0 - o.a0}; }
  QuadFn operator-() const { return {-a2, -a1, -a0}; }
  QuadFn operator*(double k) const { return {a2 * k, a1 * k, a0 * k}; }

  bool operator==(const QuadFn&) const = default;
};

/// Product of two linear functions, exact in coefficients.
inline QuadFn mul(const LinearFn& a, const LinearFn& b) {
  return {a.slope * b.slope, a.slope * b.intercept + a.intercept * b.slope,
          a.intercept * b.intercept};
}

/// Coefficient-wise near-equality, used when re-maximalizing piecewise functions.
inline bool coef_close(const QuadFn& a, const QuadFn& b, double scale = 1.0) {
  const double s =
      std::max({1.0, std::abs(scale), std::abs(a.a2), std::abs(a.a1), std::abs(a.a0),
                std::abs(b.a2), std::abs(b.a1), std::abs(b.a0)});
  const double tol = 1e-12 * s;
  return std::abs(a.a2 - b.a2) <= tol && std::abs(a.a1 - b.a1) <= tol &&
         std::abs(a.a0 - b.a0) <= tol;
}

}  // namespace pathregret
