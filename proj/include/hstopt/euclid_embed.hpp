#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hstopt/hst.hpp"
#include "hstopt/sampling.hpp"

namespace hstopt {

// A uniform grid of s^d cell midpoints in [0,1]^d, s a power of two.
struct GridSpec {
  int dim = 1;
  std::uint64_t cells_per_axis = 2;  // s
};

// The dominating tree over the grid: b = 2^d, depth log2 s, ratio 1/2.
// The weight scale is 1/2 for d = 1 (the interval construction) and the
// smallest dyadic rational >= sqrt(d)/2 for d >= 2, so that a level-l
// subtree's diameter covers the Euclidean diameter of its 2^-l-sided cell
// and every cost stays an exact rational.
struct GridHst {
  HstParams params;
  GridSpec spec;

  // Midpoint coordinates of the cell addressed by a leaf; the leaf digits
  // interleave one bit per axis per level.
  std::vector<Rational> leaf_point(std::uint64_t leaf) const;
};

GridHst build_grid_hst(const GridSpec& spec);

// Leaf of the cell containing a point of [0,1]^d (coordinates outside the
// cube are rejected; the upper boundary belongs to the last cell).
std::uint64_t point_to_leaf(const GridHst& grid, const std::vector<Rational>& point);

struct DominationVerdict {
  bool ok = true;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> violation;  // leaf pair
};

// Verifies d_tree(p, q) >= |p - q|_2 over grid pairs, exactly (squared
// comparison in rationals).  Enumerates every pair when there are at most
// 2^16 of them, otherwise checks 2^16 sampled pairs.
DominationVerdict check_domination(const GridSpec& spec, Seed seed = 0);

struct StretchRow {
  std::uint64_t p = 0;  // indices into the n original grid points
  std::uint64_t q = 0;
  Rational torus_distance;
  Rational expected_stretch;  // average over all n shifts of tree/torus
};

struct StretchTable {
  std::vector<StretchRow> rows;
  Rational max_expected_stretch;
  // Smallest single-shift tree/torus ratio seen; the family built at the
  // interval scale guarantees >= 1/2, not >= 1.
  Rational min_shift_ratio;
};

// The n cyclically shifted trees over the doubled wrap-around interval
// [0, 2]: n grid points are mirrored to 2n leaves, shift sigma makes point
// sigma the first leaf, and each tree reuses the interval construction at
// its scale (ratio 1/2, scale 1/2).  Exact averages over all shifts for
// every pair of original points.  Only d = 1 is defined.
StretchTable shifted_family_stretch(const GridSpec& spec);

}  // namespace hstopt
