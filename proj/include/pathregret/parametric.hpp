#pragma once

#include <vector>

#include "pathregret/network.hpp"
#include "pathregret/piecewise.hpp"
#include "pathregret/side_family.hpp"

namespace pathregret {

/// z_j(t) for one family member: the upper envelope, over all shallower
/// members, of the supply level at which this member takes over the side's
/// arrival envelope. Piecewise linear in t. Member 0 has no competitors and
/// yields the outer supply boundary as a single piece.
PiecewisePoly takeover_envelope(const SideFamily& fam, Interval horizon, int member);
PiecewisePoly takeover_envelope(const Network& net, int edge, Side side, int member);

/// F^e_side(t): the x-free side contribution to the aggregate evacuation time,
/// as a maximal piecewise polynomial of degree at most two over the horizon.
///
/// Two steps: candidate breakpoints are gathered from every member's takeover
/// envelope, then on each candidate subinterval the arrival envelope sequence
/// is probed at the midpoint and integrated symbolically.
PiecewisePoly side_integral(const Network& net, int edge, Side side);

/// Phi(v_i, t) as a piecewise quadratic: the two adjacent side integrals plus
/// the sink-coordinate term. Precomputed side integrals may be passed to avoid
/// recomputation (null = compute internally, missing side = zero).
PiecewisePoly aggregate_at_vertex(const Network& net, int i);
PiecewisePoly aggregate_at_vertex(const Network& net, int i,
                                  const PiecewisePoly* left_integral,
                                  const PiecewisePoly* right_integral);

/// Opt(t): the lower envelope over all vertex sinks of Phi(v_i, t). Piece tags
/// record the minimizing vertex.
PiecewisePoly min_aggregate(const Network& net);
PiecewisePoly min_aggregate(const Network& net,
                            const std::vector<PiecewisePoly>& left_integrals,
                            const std::vector<PiecewisePoly>& right_integrals);

}  // namespace pathregret
