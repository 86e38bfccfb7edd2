#include "hstopt/sampling.hpp"

namespace hstopt {

LeafMultiset sample_leaves(const HstParams& params, std::uint64_t n, Seed seed,
                           std::uint64_t stream) {
  SplitMix64 gen(seed, stream);
  LeafMultiset w{params, {}};
  w.points.reserve(n);
  const std::uint64_t leaves = params.leaf_count_u64();
  for (std::uint64_t i = 0; i < n; ++i) w.points.push_back(gen.next_below(leaves));
  return w;
}

ColoredSample sample_colored(const HstParams& params, std::uint64_t n, Seed seed,
                             std::uint64_t stream) {
  SplitMix64 gen(seed, stream);
  const std::uint64_t leaves = params.leaf_count_u64();
  ColoredSample s{{params, {}}, {params, {}}};
  s.red.points.reserve(n);
  s.blue.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) s.red.points.push_back(gen.next_below(leaves));
  for (std::uint64_t i = 0; i < n; ++i) s.blue.points.push_back(gen.next_below(leaves));
  return s;
}

SubtreeCounts subtree_counts(const LeafMultiset& w) {
  SubtreeCounts c;
  c.total = w.size();
  c.depth = w.params.depth();
  c.branching = w.params.branching();
  c.counts.reserve(w.points.size() * (w.params.depth() + 1));
  const auto b = static_cast<std::uint64_t>(w.params.branching());
  for (std::uint64_t p : w.points) {
    std::uint64_t idx = p;
    for (int level = w.params.depth(); level >= 0; --level) {
      ++c.counts[NodeId{level, idx}];
      idx /= b;
    }
  }
  return c;
}

}  // namespace hstopt
