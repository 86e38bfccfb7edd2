#pragma once

#include <unordered_map>
#include <vector>

#include "hstopt/sampling.hpp"

namespace hstopt {

// Number of matched pairs whose connecting path peaks at each internal
// vertex, in an optimal matching.  For a vertex with m odd-count children,
// tau = floor(m / 2); vertices with all-even children are omitted.
struct TransitProfile {
  std::unordered_map<NodeId, std::uint64_t, NodeIdHash> transits;
  std::vector<std::uint64_t> per_level;  // sum of tau over vertices of each level, index 0..depth
  bool leftover = false;                 // one point stays unmatched (odd sample size)
};

// Exact cost with its per-level decomposition.  per_level[l] is the part of
// the cost attributed to level l (transit vertices at level l for matching;
// edges into level-l vertices for tours and spanning trees); total is their
// sum.
struct SolutionCost {
  Rational total;
  std::vector<Rational> per_level;
};

TransitProfile transit_counts(const SubtreeCounts& c);

// Minimum matching cost of the multiset: sum over internal vertices of
// tau_v times the distance between two leaves meeting at v.  An odd point
// count leaves one point out, which matches the min-over-exclusions
// definition (checked against the oracle, not assumed).
SolutionCost matching_cost(const LeafMultiset& w);

// Doubled weight of the subtree induced by the occupied leaves.  With
// include_root the sum covers every occupied vertex's parent edge (the tour
// through the points and the root); without it only edges strictly below
// the lowest common ancestor of the occupied leaves count, which is the
// optimal tour on the points alone.  n >= 1.
SolutionCost induced_tour_cost(const LeafMultiset& w, bool include_root);

// Exact minimum spanning tree cost: the rootless tour minus one crossing
// distance at the top vertex (all crossing pairs there are equidistant).
// n >= 1; zero when a single distinct leaf is occupied.
SolutionCost mst_cost(const LeafMultiset& w);

}  // namespace hstopt
