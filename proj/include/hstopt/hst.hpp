#pragma once

#include <compare>
#include <cstdint>
#include <functional>

#include "hstopt/rational.hpp"

namespace hstopt {

// Address of a vertex in the implicit balanced tree: the root is (0,0), the
// children of (l, i) are (l+1, i*b + c) for c in [0, b).  Leaves sit at
// level delta.  The tree is never materialized; everything is index
// arithmetic on these addresses.
struct NodeId {
  int level = 0;
  std::uint64_t index = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct NodeIdHash {
  std::size_t operator()(const NodeId& v) const noexcept {
    std::uint64_t h = (static_cast<std::uint64_t>(v.level) << 56) ^ v.index;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

// Parameters of a balanced tree: branching factor b >= 2, depth delta >= 1,
// edge ratio lambda in (0,1), and a global weight scale > 0.  The parent
// edge of a level-l vertex weighs scale * lambda^l.
//
// Leaf addresses are kept in 64-bit integers, so construction requires
// b^delta < 2^63; leaf_count() still reports the exact count as a big
// integer.
class HstParams {
 public:
  HstParams(int branching, int depth, Rational lambda, Rational scale = Rational(1));

  int branching() const { return b_; }
  int depth() const { return delta_; }
  const Rational& lambda() const { return lambda_; }
  const Rational& scale() const { return scale_; }

  Int leaf_count() const;
  std::uint64_t leaf_count_u64() const { return leaf_count_u64_; }

  // Number of vertices at a level (b^level).
  std::uint64_t level_width(int level) const;

  bool valid_node(const NodeId& v) const;
  NodeId root() const { return NodeId{0, 0}; }
  NodeId leaf(std::uint64_t index) const;
  NodeId parent(const NodeId& v) const;
  NodeId ancestor_at(const NodeId& v, int level) const;

 private:
  int b_;
  int delta_;
  Rational lambda_;
  Rational scale_;
  std::uint64_t leaf_count_u64_;
};

// Weight of the edge from v to its parent: scale * lambda^level(v).
// The root has no parent edge (domain error).
Rational edge_weight(const HstParams& params, const NodeId& v);

NodeId lca(const HstParams& params, const NodeId& u, const NodeId& v);

// Total weight of the path between two vertices; 0 when u == v.
Rational distance(const HstParams& params, const NodeId& u, const NodeId& v);

// 2 * scale * sum_{i=1..delta} lambda^i, the distance between two leaves in
// opposite subtrees of the root.
Rational diameter(const HstParams& params);

// min(delta, ceil(log_b n)): the level at which a random n-point sample has
// on the order of one point per subtree.  n >= 1.
int effective_height(const HstParams& params, std::uint64_t n);

struct LiftResult {
  NodeId ancestor;
  Rational cost;  // one-way path weight from the leaf up to the ancestor
};

// Ancestor of `leaf` at `target_level` plus the exact one-way path cost
// sum_{i=target_level+1..delta} scale * lambda^i.
LiftResult lift(const HstParams& params, const NodeId& leaf, int target_level);

// Top(k): total edge weight of the first ceil(log_b k) levels,
// sum_{i=1..ceil(log_b k)} scale * (b*lambda)^i.  Top(1) = 0.
Rational top_k_weight(const HstParams& params, std::uint64_t k);

// sum_{i=t+1..delta} scale * lambda^i: one-way cost from a leaf to its
// level-t ancestor.
Rational tail_weight(const HstParams& params, int t);

// Distance between two leaves whose lowest common ancestor sits at level t.
Rational leaf_pair_distance(const HstParams& params, int t);

// Smallest h >= 0 with b^h >= n.
int ceil_log(std::uint64_t base, std::uint64_t n);

}  // namespace hstopt
