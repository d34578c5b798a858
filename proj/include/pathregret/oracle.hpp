#pragma once

#include "pathregret/evacuation.hpp"
#include "pathregret/network.hpp"

namespace pathregret {

/// Brute-force validators. These deliberately share no code with the envelope
/// or parametric machinery beyond the Network queries: integrals are taken
/// bucket by bucket with explicit inner maxima, and the flow simulation walks
/// queue dynamics forward in time.

/// Aggregate evacuation time by direct bucket integration.
double oracle_aggregate_time(const Network& net, double x, double t);

/// The x-free side contribution at a fixed t (same quantity as
/// parametric::side_integral evaluated at t), by bucket integration.
double oracle_side_integral(const Network& net, int edge, Side side, double t);

/// (A, B) with aggregate time = A*x + B for x on the open edge at fixed t.
std::pair<double, double> oracle_edge_affine(const Network& net, int edge, double t);

/// min over vertices of the aggregate time, via oracle_aggregate_time.
double oracle_opt(const Network& net, double t);

/// Lower bound on MR(x): max of R(x,t) over a t-grid, sharpened by
/// golden-section refinement around every local grid maximum.
double oracle_max_regret(const Network& net, double x, int t_grid_size,
                         int refine_iters);

/// Completion time by forward simulation of the FIFO queue dynamics. The
/// simulation advances in steps bounded by dt and additionally snaps to the
/// internal events (queue drains, arrival-rate changes), so rates are constant
/// within every step.
double simulate_completion(const Network& net, const SinkLocation& sink, double t,
                           double dt);

/// Halves dt until two successive simulations differ by less than 1e-6;
/// throws NumericError after 24 halvings without convergence.
double simulate_completion_refined(const Network& net, const SinkLocation& sink,
                                   double t);

}  // namespace pathregret
