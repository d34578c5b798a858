#pragma once

#include <vector>

#include "pathregret/evacuation.hpp"
#include "pathregret/network.hpp"
#include "pathregret/piecewise.hpp"

namespace pathregret {

/// One scenario window of an edge's regret: on x in the edge and t in
/// `window`, R(x,t) = b1 t^2 + b2 x t + b3 t + b4 x + b5.
struct RegretPiece {
  int edge = -1;
  Interval window;
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0;

  double eval(double x, double t) const {
    return (b1 * t + b2 * x + b3) * t + b4 * x + b5;
  }
};

struct StageDiagnostics {
  std::vector<int> pieces_f_left;    // per edge
  std::vector<int> pieces_f_right;   // per edge
  int pieces_opt = 0;
  std::vector<int> pieces_mr_edge;   // per-edge regret envelope pieces
  std::vector<double> mr_vertex;     // MR(v_i)
  std::vector<double> mr_edge_min;   // min MR over each closed edge extent
  std::vector<double> mr_edge_argmin;
};

struct SolveResult {
  SinkLocation sink;
  double max_regret = 0.0;
  StageDiagnostics diag;
};

/// Everything the solver builds, kept for sampling and cross-checking.
struct EdgeRegret {
  std::vector<RegretPiece> pieces;
  PiecewisePoly envelope;  // MR(x) over the closed edge extent
  Extremum best;
};

struct Analysis {
  std::vector<PiecewisePoly> F_left, F_right;  // per edge
  PiecewisePoly opt;
  std::vector<EdgeRegret> edges;
  std::vector<double> vertex_mr;
};

/// Splits the edge's regret into scenario windows with explicit coefficients:
/// the common refinement of F_L + F_R - Opt plus the linear sink-coordinate
/// term.
std::vector<RegretPiece> regret_pieces(const Network& net, int edge,
                                       const PiecewisePoly& F_left,
                                       const PiecewisePoly& F_right,
                                       const PiecewisePoly& opt);

/// G_j(x) = max over t in the window of R(x,t), over the closed edge extent.
/// At most three pieces: two endpoint lines when the piece is convex in t,
/// otherwise the three-region clamp of the in-window vertex.
PiecewisePoly piece_worst_regret(const RegretPiece& piece, Interval extent);

/// Upper envelope of all G_j over the closed extent plus its minimizer.
EdgeRegret build_edge_regret(const Network& net, int edge,
                             const PiecewisePoly& F_left,
                             const PiecewisePoly& F_right,
                             const PiecewisePoly& opt);

/// MR(v_i): exact max over the horizon of the vertex regret.
double max_regret_at_vertex(const Network& net, int i,
                            const PiecewisePoly* left_integral,
                            const PiecewisePoly* right_integral,
                            const PiecewisePoly& opt);

/// Full pipeline: all side integrals, Opt, per-edge envelopes and vertex
/// values. Deterministic.
Analysis analyze(const Network& net);

/// Minmax-regret optimal sink. Ties within 1e-9 relative of the minimum are
/// broken toward the smaller coordinate, then toward vertex candidates.
SolveResult solve(const Network& net);
SolveResult solve(const Network& net, const Analysis& analysis);

/// Exact MR(x) for an arbitrary coordinate, from the precomputed analysis.
double max_regret_at(const Network& net, const Analysis& analysis, double x);

}  // namespace pathregret
