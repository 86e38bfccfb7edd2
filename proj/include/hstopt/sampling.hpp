#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hstopt/hst.hpp"

namespace hstopt {

using Seed = std::uint64_t;

// splitmix64 (Steele, Lea, Flood 2014), seeded per stream so that
// (seed, stream) pairs give independent, platform-stable sequences.
// Stream s starts from state seed ^ (s * 0x9E3779B97F4A7C15).
class SplitMix64 {
 public:
  explicit SplitMix64(Seed seed, std::uint64_t stream = 0)
      : state_(seed ^ (stream * 0x9E3779B97F4A7C15ULL)) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
    std::uint64_t r;
    do {
      r = next();
    } while (r < threshold);
    return r % bound;
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// A multiset of n leaf indices of the tree, multiplicity-aware.
struct LeafMultiset {
  HstParams params;
  std::vector<std::uint64_t> points;

  std::uint64_t size() const { return points.size(); }
};

// Equal-sized red and blue leaf multisets over the same tree.
struct ColoredSample {
  LeafMultiset red;
  LeafMultiset blue;
};

// Sparse per-vertex occupancy X(v): only ancestors of occupied leaves are
// present; an absent vertex has count zero.
struct SubtreeCounts {
  std::unordered_map<NodeId, std::uint64_t, NodeIdHash> counts;
  std::uint64_t total = 0;
  int depth = 0;
  int branching = 2;

  std::uint64_t at(const NodeId& v) const {
    auto it = counts.find(v);
    return it == counts.end() ? 0 : it->second;
  }
};

// n i.i.d. uniform leaf draws, deterministic in (seed, stream).
LeafMultiset sample_leaves(const HstParams& params, std::uint64_t n, Seed seed,
                           std::uint64_t stream = 0);

// n red then n blue draws from the single (seed, stream) sequence.
ColoredSample sample_colored(const HstParams& params, std::uint64_t n, Seed seed,
                             std::uint64_t stream = 0);

SubtreeCounts subtree_counts(const LeafMultiset& w);

inline int parity_of_counts(const SubtreeCounts& c, const NodeId& v) {
  return static_cast<int>(c.at(v) & 1);
}

}  // namespace hstopt
