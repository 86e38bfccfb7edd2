#include "hstopt/bi_solvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hstopt {

namespace {

const HstParams& tree_of(const ColoredSample& s) { return s.red.params; }

void accumulate(ColoredCounts& c, const LeafMultiset& w, bool red) {
  const auto b = static_cast<std::uint64_t>(w.params.branching());
  for (std::uint64_t p : w.points) {
    std::uint64_t idx = p;
    for (int level = w.params.depth(); level >= 0; --level) {
      auto& entry = c.counts[NodeId{level, idx}];
      if (red) {
        ++entry.red;
      } else {
        ++entry.blue;
      }
      idx /= b;
    }
  }
}

// Union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

int lca_level_of_leaves(const HstParams& params, std::uint64_t a, std::uint64_t b) {
  int level = params.depth();
  const auto branch = static_cast<std::uint64_t>(params.branching());
  while (a != b) {
    a /= branch;
    b /= branch;
    --level;
  }
  return level;
}

}  // namespace

ColoredCounts colored_counts(const ColoredSample& s) {
  ColoredCounts c;
  c.total_red = s.red.size();
  c.total_blue = s.blue.size();
  c.depth = tree_of(s).depth();
  c.branching = tree_of(s).branching();
  c.counts.reserve((s.red.size() + s.blue.size()) * (c.depth + 1));
  accumulate(c, s.red, true);
  accumulate(c, s.blue, false);
  return c;
}

NodeColoring node_coloring(const ColoredSample& s) {
  const ColoredCounts counts = colored_counts(s);
  NodeColoring coloring;
  coloring.colors.reserve(counts.counts.size());
  for (const auto& [node, pair] : counts.counts) {
    NodeColor color = NodeColor::White;
    if (pair.red > 0 && pair.blue > 0) {
      color = NodeColor::Violet;
    } else if (pair.red > 0) {
      color = NodeColor::Red;
    } else if (pair.blue > 0) {
      color = NodeColor::Blue;
    }
    coloring.colors.emplace(node, color);
  }
  return coloring;
}

std::uint64_t node_discrepancy(const ColoredSample& s, const NodeId& v) {
  const ColoredCounts counts = colored_counts(s);
  const auto pair = counts.at(v);
  return pair.red > pair.blue ? pair.red - pair.blue : pair.blue - pair.red;
}

Rational bi_matching_cost(const ColoredSample& s) {
  if (s.red.size() != s.blue.size()) {
    throw std::domain_error("bichromatic matching needs |R| = |B|");
  }
  const HstParams& params = tree_of(s);
  const ColoredCounts counts = colored_counts(s);
  std::vector<std::uint64_t> imbalance_per_level(static_cast<std::size_t>(params.depth()) + 1, 0);
  for (const auto& [node, pair] : counts.counts) {
    if (node.level == 0) continue;
    const std::uint64_t gap = pair.red > pair.blue ? pair.red - pair.blue : pair.blue - pair.red;
    imbalance_per_level[static_cast<std::size_t>(node.level)] += gap;
  }
  Rational cost = 0;
  for (int level = 1; level <= params.depth(); ++level) {
    const std::uint64_t gap = imbalance_per_level[static_cast<std::size_t>(level)];
    if (gap == 0) continue;
    cost += Rational(gap) * params.scale() *
            rational_pow(params.lambda(), static_cast<std::uint64_t>(level));
  }
  return cost;
}

Rational nearest_opposite_cost(const ColoredSample& s) {
  if (s.red.size() == 0 || s.blue.size() == 0) {
    throw std::domain_error("nearest-opposite needs both colors nonempty");
  }
  const HstParams& params = tree_of(s);
  const ColoredCounts counts = colored_counts(s);
  const auto b = static_cast<std::uint64_t>(params.branching());

  // d(p, N(p)) = leaf_pair_distance(t) where t is the level of the lowest
  // ancestor of p's leaf whose subtree holds the opposite color; 0 when the
  // leaf itself does.
  std::vector<std::uint64_t> hits_per_level(static_cast<std::size_t>(params.depth()) + 1, 0);
  auto locate = [&](std::uint64_t leaf, bool red_point) {
    std::uint64_t idx = leaf;
    for (int level = params.depth(); level >= 0; --level) {
      const auto pair = counts.at(NodeId{level, idx});
      const std::uint64_t opposite = red_point ? pair.blue : pair.red;
      if (opposite > 0) {
        ++hits_per_level[static_cast<std::size_t>(level)];
        return;
      }
      idx /= b;
    }
  };
  for (std::uint64_t p : s.red.points) locate(p, true);
  for (std::uint64_t p : s.blue.points) locate(p, false);

  Rational cost = 0;
  for (int level = 0; level < params.depth(); ++level) {
    const std::uint64_t hits = hits_per_level[static_cast<std::size_t>(level)];
    if (hits == 0) continue;
    cost += Rational(hits) * leaf_pair_distance(params, level);
  }
  return cost;
}

Rational bi_mst_cost_exact(const ColoredSample& s) {
  if (s.red.size() == 0 || s.blue.size() == 0) {
    throw std::domain_error("bichromatic spanning tree needs both colors nonempty");
  }
  const HstParams& params = tree_of(s);
  const std::size_t reds = s.red.points.size();
  const std::size_t blues = s.blue.points.size();

  // Bucket the red-blue edges by the level of their lowest common ancestor;
  // distance decreases strictly with depth, so scanning levels bottom-up is
  // exactly a greedy pass in increasing edge weight.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets(
      static_cast<std::size_t>(params.depth()) + 1);
  for (std::size_t i = 0; i < reds; ++i) {
    for (std::size_t j = 0; j < blues; ++j) {
      const int t = lca_level_of_leaves(params, s.red.points[i], s.blue.points[j]);
      buckets[static_cast<std::size_t>(t)].emplace_back(static_cast<std::uint32_t>(i),
                                                        static_cast<std::uint32_t>(j));
    }
  }

  DisjointSets sets(reds + blues);
  std::size_t components = reds + blues;
  Rational cost = 0;
  for (int t = params.depth(); t >= 0 && components > 1; --t) {
    std::uint64_t merges = 0;
    for (const auto& [i, j] : buckets[static_cast<std::size_t>(t)]) {
      if (sets.unite(i, reds + j)) {
        ++merges;
        if (--components == 1) break;
      }
    }
    if (merges > 0 && t < params.depth()) {
      cost += Rational(merges) * leaf_pair_distance(params, t);
    }
  }
  return cost;
}

BoundedCost bi_mst_theta_bounds(const ColoredSample& s) {
  if (s.red.size() == 0 || s.blue.size() == 0) {
    throw std::domain_error("bichromatic spanning tree needs both colors nonempty");
  }
  LeafMultiset merged{tree_of(s), s.red.points};
  merged.points.insert(merged.points.end(), s.blue.points.begin(), s.blue.points.end());
  const Rational mono = mst_cost(merged).total;
  const Rational half_nearest = nearest_opposite_cost(s) / 2;
  BoundedCost bounds;
  bounds.upper = mono + 2 * half_nearest;
  bounds.lower = std::max(mono, half_nearest);
  return bounds;
}

BoundedCost bi_tsp_bounds(const ColoredSample& s) {
  if (s.red.size() != s.blue.size() || s.red.size() == 0) {
    throw std::domain_error("alternating tour needs |R| = |B| >= 1");
  }
  const HstParams& params = tree_of(s);
  const ColoredCounts counts = colored_counts(s);
  const std::uint64_t all = counts.total_red + counts.total_blue;

  std::vector<std::uint64_t> lower_per_level(static_cast<std::size_t>(params.depth()) + 1, 0);
  std::vector<std::uint64_t> upper_per_level(static_cast<std::size_t>(params.depth()) + 1, 0);
  for (const auto& [node, pair] : counts.counts) {
    if (node.level == 0) continue;
    if (pair.red + pair.blue == all) continue;  // the tour never leaves this subtree
    const std::uint64_t gap = pair.red > pair.blue ? pair.red - pair.blue : pair.blue - pair.red;
    lower_per_level[static_cast<std::size_t>(node.level)] += std::max<std::uint64_t>(gap, 1);
    upper_per_level[static_cast<std::size_t>(node.level)] += gap + 1;
  }

  BoundedCost bounds{Rational(0), Rational(0)};
  for (int level = 1; level <= params.depth(); ++level) {
    const Rational unit = Rational(2) * params.scale() *
                          rational_pow(params.lambda(), static_cast<std::uint64_t>(level));
    bounds.lower += Rational(lower_per_level[static_cast<std::size_t>(level)]) * unit;
    bounds.upper += Rational(upper_per_level[static_cast<std::size_t>(level)]) * unit;
  }
  return bounds;
}

}  // namespace hstopt
