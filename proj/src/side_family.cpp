#include "pathregret/side_family.hpp"

#include <cmath>
#include <stdexcept>

namespace pathregret {

SideFamily make_side_family(const Network& net, int edge, Side side) {
  if (edge < 0 || edge >= net.edge_count())
    throw std::out_of_range("make_side_family: edge index out of range");

  SideFamily fam;
  fam.edge = edge;
  fam.side = side;
  const double tau = net.tau();

  if (side == Side::left) {
    // vertices edge, edge-1, ..., 0; supply from vertex j crosses edges j..edge
    for (int j = edge; j >= 0; --j) {
      fam.vertex.push_back(j);
      fam.slope.push_back(1.0 / net.range_min_capacity(j, edge));
      fam.offset.push_back(-tau * net.position(j));
      fam.dom_start.push_back(net.prefix_weight(j + 1, edge));
    }
    fam.total = net.prefix_weight(0, edge);
  } else {
    // vertices edge+1, ..., n-1; supply from vertex j crosses edges edge..j-1
    const int n = net.vertex_count();
    for (int j = edge + 1; j < n; ++j) {
      fam.vertex.push_back(j);
      fam.slope.push_back(1.0 / net.range_min_capacity(edge, j - 1));
      fam.offset.push_back(tau * net.position(j));
      fam.dom_start.push_back(net.prefix_weight(edge + 1, j - 1));
    }
    fam.total = net.prefix_weight(edge + 1, n - 1);
  }
  return fam;
}

std::vector<SeqEntry> envelope_sequence(const SideFamily& fam, double t) {
  std::vector<SeqEntry> st;
  const double W = fam.total(t);
  const double zeps = kRelTol * std::max(1.0, W);
  if (W <= zeps) return st;

  const int M = fam.size();
  for (int m = 0; m < M; ++m) {
    double D = fam.dom_start[m](t);
    if (D < 0.0) D = 0.0;
    if (D >= W - zeps) continue;  // empty z-range at this t

    const double sm = fam.slope[m];
    const double bm = fam.z_intercept(m, t);
    double start = D;
    bool keep = true;
    while (!st.empty()) {
      const SeqEntry& top = st.back();
      const double sj = fam.slope[top.member];
      const double bj = fam.z_intercept(top.member, t);
      const double z0 = std::max(top.z_from, D);
      const double fm = sm * z0 + bm;
      const double fj = sj * z0 + bj;
      const double vtol = kRelTol * std::max({1.0, std::abs(fm), std::abs(fj)});

      if (fm >= fj - vtol && sm == sj) {
        // parallel: one of the two dominates everywhere
        if (fm <= fj + vtol) {
          keep = false;  // coincident: keep the earlier member
          break;
        }
        if (top.z_from >= D) {
          start = top.z_from;
          st.pop_back();
          continue;
        }
        start = D;
        break;
      }
      if (fm >= fj - vtol) {
        // m is steeper and already above the top at z0: top loses [z0, ...)
        if (top.z_from >= D) {
          start = top.z_from;
          st.pop_back();
          continue;
        }
        start = D;  // top keeps [top.z_from, D)
        break;
      }
      // m below the top at z0: need a crossing, which requires a larger slope
      if (sm <= sj) {
        keep = false;
        break;
      }
      const double zc = (bj - bm) / (sm - sj);
      if (zc >= W - zeps) {
        keep = false;
        break;
      }
      start = std::max(zc, D);
      break;
    }
    if (!keep) continue;
    st.push_back({m, start});
  }

  if (!st.empty() && st.front().z_from < zeps) st.front().z_from = 0.0;
  return st;
}

}  // namespace pathregret
