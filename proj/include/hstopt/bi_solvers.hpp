#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>

#include "hstopt/mono_solvers.hpp"
#include "hstopt/sampling.hpp"

namespace hstopt {

enum class NodeColor { White, Red, Blue, Violet };

// Violet marks a vertex whose subtree holds at least one point of each
// color; absent vertices are white (empty subtree).
struct NodeColoring {
  std::unordered_map<NodeId, NodeColor, NodeIdHash> colors;

  NodeColor at(const NodeId& v) const {
    auto it = colors.find(v);
    return it == colors.end() ? NodeColor::White : it->second;
  }
};

// Sparse per-vertex occupancy split by color.
struct ColoredCounts {
  struct Pair {
    std::uint64_t red = 0;
    std::uint64_t blue = 0;
  };
  std::unordered_map<NodeId, Pair, NodeIdHash> counts;
  std::uint64_t total_red = 0;
  std::uint64_t total_blue = 0;
  int depth = 0;
  int branching = 2;

  Pair at(const NodeId& v) const {
    auto it = counts.find(v);
    return it == counts.end() ? Pair{} : it->second;
  }
};

struct BoundedCost {
  Rational lower;
  Rational upper;
};

ColoredCounts colored_counts(const ColoredSample& s);
NodeColoring node_coloring(const ColoredSample& s);

// |R(v) - B(v)|, the red-blue imbalance of v's subtree.
std::uint64_t node_discrepancy(const ColoredSample& s, const NodeId& v);

// Exact optimal transport (earth-mover) cost between the red and blue
// multisets: each parent edge is crossed exactly |R(v) - B(v)| times in an
// optimal matching, so the cost is the weighted sum of those imbalances.
// Requires |R| = |B|.
Rational bi_matching_cost(const ColoredSample& s);

// Sum over all 2n points of the exact distance to the nearest
// opposite-colored point, located through the lowest ancestor whose subtree
// holds the opposite color.  Requires both colors nonempty.
Rational nearest_opposite_cost(const ColoredSample& s);

// Exact minimum spanning tree over red-blue edges only, by greedy edge
// insertion in distance order (edges bucketed by the level of the
// endpoints' lowest common ancestor).  Requires both colors nonempty.
Rational bi_mst_cost_exact(const ColoredSample& s);

// Certified interval around the bichromatic spanning tree optimum:
//   upper = monochromatic MST of R u B  +  nearest-opposite sum
//           (connect every point toward its closest opposite neighbor and
//            restore connectivity with the monochromatic tree),
//   lower = max(monochromatic MST, nearest-opposite sum / 2)
//           (every tree edge at p costs at least d(p, N(p)) and is shared
//            by at most two points).
BoundedCost bi_mst_theta_bounds(const ColoredSample& s);

// Certified interval for the optimal alternating tour.  Both sides sum
// doubled per-edge visit counts:
//   lower uses max(|R(v) - B(v)|, 1) visits at every properly occupied
//   vertex (an alternating tour shifts the in-subtree balance by at most
//   one per visit);
//   upper uses |R(v) - B(v)| + 1 visits when the counts differ, 1 when they
//   are equal and positive (the bottom-up path construction).
// Vertices whose subtree holds all points contribute nothing (the tour
// never leaves them).  Requires |R| = |B| >= 1.
BoundedCost bi_tsp_bounds(const ColoredSample& s);

}  // namespace hstopt
