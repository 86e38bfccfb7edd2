#include "hstopt/mono_solvers.hpp"

#include <algorithm>
#include <stdexcept>

namespace hstopt {

TransitProfile transit_counts(const SubtreeCounts& c) {
  TransitProfile profile;
  profile.leftover = (c.total & 1) != 0;
  profile.per_level.assign(static_cast<std::size_t>(c.depth) + 1, 0);
  if (c.counts.empty()) return profile;

  // tau_v = (sum of Odd(X(child)) - Odd(X(v))) / 2 = floor(#odd children / 2),
  // because Odd(X(v)) is the parity of the number of odd-count children.
  std::unordered_map<NodeId, std::uint64_t, NodeIdHash> odd_children;
  odd_children.reserve(c.counts.size());
  const auto b = static_cast<std::uint64_t>(c.branching);
  for (const auto& [node, count] : c.counts) {
    if (node.level == 0 || (count & 1) == 0) continue;
    ++odd_children[NodeId{node.level - 1, node.index / b}];
  }
  for (const auto& [node, odd] : odd_children) {
    const std::uint64_t tau = odd / 2;
    if (tau == 0) continue;
    profile.transits.emplace(node, tau);
    profile.per_level[static_cast<std::size_t>(node.level)] += tau;
  }
  return profile;
}

namespace {

std::vector<std::uint64_t> occupied_per_level(const SubtreeCounts& c) {
  std::vector<std::uint64_t> occ(static_cast<std::size_t>(c.depth) + 1, 0);
  for (const auto& [node, count] : c.counts) {
    (void)count;
    ++occ[static_cast<std::size_t>(node.level)];
  }
  return occ;
}

}  // namespace

SolutionCost matching_cost(const LeafMultiset& w) {
  const SubtreeCounts counts = subtree_counts(w);
  const TransitProfile profile = transit_counts(counts);
  SolutionCost cost;
  cost.total = 0;
  cost.per_level.assign(static_cast<std::size_t>(w.params.depth()) + 1, Rational(0));
  for (int level = 0; level < w.params.depth(); ++level) {
    const std::uint64_t tau = profile.per_level[static_cast<std::size_t>(level)];
    if (tau == 0) continue;
    Rational contribution = Rational(tau) * leaf_pair_distance(w.params, level);
    cost.per_level[static_cast<std::size_t>(level)] = contribution;
    cost.total += contribution;
  }
  return cost;
}

SolutionCost induced_tour_cost(const LeafMultiset& w, bool include_root) {
  if (w.size() == 0) throw std::domain_error("tour needs at least one point");
  const SubtreeCounts counts = subtree_counts(w);
  const auto occ = occupied_per_level(counts);

  // Lowest common ancestor of the occupied leaves: deepest level where a
  // single occupied vertex covers everything.
  int top = 0;
  if (!include_root) {
    const auto [min_it, max_it] = std::minmax_element(w.points.begin(), w.points.end());
    top = lca(w.params, w.params.leaf(*min_it), w.params.leaf(*max_it)).level;
  }

  SolutionCost cost;
  cost.total = 0;
  cost.per_level.assign(static_cast<std::size_t>(w.params.depth()) + 1, Rational(0));
  for (int level = top + 1; level <= w.params.depth(); ++level) {
    std::uint64_t nodes = occ[static_cast<std::size_t>(level)];
    // Strictly below the top vertex every occupied vertex lies on a path
    // from it, so the level counts need no extra filtering.
    Rational contribution = Rational(2) * Rational(nodes) *
                            w.params.scale() *
                            rational_pow(w.params.lambda(), static_cast<std::uint64_t>(level));
    cost.per_level[static_cast<std::size_t>(level)] = contribution;
    cost.total += contribution;
  }
  return cost;
}

SolutionCost mst_cost(const LeafMultiset& w) {
  if (w.size() == 0) throw std::domain_error("spanning tree needs at least one point");
  const auto [min_it, max_it] = std::minmax_element(w.points.begin(), w.points.end());
  SolutionCost cost = induced_tour_cost(w, false);
  if (*min_it == *max_it) return cost;  // single distinct leaf: cost 0 already
  const int top = lca(w.params, w.params.leaf(*min_it), w.params.leaf(*max_it)).level;
  for (int level = top + 1; level <= w.params.depth(); ++level) {
    Rational crossing = Rational(2) * w.params.scale() *
                        rational_pow(w.params.lambda(), static_cast<std::uint64_t>(level));
    cost.per_level[static_cast<std::size_t>(level)] -= crossing;
    cost.total -= crossing;
  }
  return cost;
}

}  // namespace hstopt
