#pragma once

#include <cstdint>
#include <vector>

#include "hstopt/sampling.hpp"

namespace hstopt {

// Explicit pairwise distances for a small instance, ground truth for the
// structural solvers.  Colors are empty for monochromatic instances,
// otherwise 0 = red, 1 = blue, reds listed first.
struct DistanceMatrix {
  std::vector<std::vector<Rational>> dist;
  std::vector<int> colors;

  std::size_t size() const { return dist.size(); }
};

DistanceMatrix distance_matrix(const HstParams& params, const std::vector<std::uint64_t>& leaves);
DistanceMatrix distance_matrix(const ColoredSample& s);

// Exact minimum matching by dynamic programming over point subsets
// (<= 16 points).  Odd counts take the minimum over single exclusions.
Rational brute_matching(const DistanceMatrix& m);

// Exact shortest closed tour by Held-Karp subset DP (<= 16 points).  With
// `alternating` set, consecutive tour points must differ in color and the
// two color classes must be balanced.
Rational brute_tsp(const DistanceMatrix& m, bool alternating = false);

// Exact minimum spanning tree by greedy edge insertion with union-find;
// `bichromatic` restricts to red-blue edges and needs both colors present.
// No size cap beyond memory.
Rational brute_mst(const DistanceMatrix& m, bool bichromatic = false);

}  // namespace hstopt
