#include "hstopt/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hstopt {

namespace {

constexpr std::size_t kMatchingCap = 16;
constexpr std::size_t kTourCap = 16;
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// All pairwise distances on a fixed tree share a small set of values, so
// instances normalize onto an integer grid: dist[i][j] = grid[i][j] / denom.
// Exactness is preserved and the subset DPs run on machine integers.
struct IntegerGrid {
  std::vector<std::vector<std::int64_t>> entries;
  Int denom = 1;
};

IntegerGrid normalize(const DistanceMatrix& m) {
  IntegerGrid grid;
  for (const auto& row : m.dist) {
    for (const auto& value : row) {
      const Int d = denominator(value);
      grid.denom = boost::multiprecision::lcm(grid.denom, d);
    }
  }
  grid.entries.resize(m.size(), std::vector<std::int64_t>(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Int scaled = numerator(m.dist[i][j]) * (grid.denom / denominator(m.dist[i][j]));
      if (scaled < 0 || scaled > kInf / 64) {
        throw std::length_error("distance values too large for the oracle grid");
      }
      grid.entries[i][j] = scaled.convert_to<std::int64_t>();
    }
  }
  return grid;
}

Rational degrid(std::int64_t value, const Int& denom) { return Rational(Int(value), denom); }

}  // namespace

DistanceMatrix distance_matrix(const HstParams& params,
                               const std::vector<std::uint64_t>& leaves) {
  DistanceMatrix m;
  const std::size_t n = leaves.size();
  m.dist.assign(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> by_level(static_cast<std::size_t>(params.depth()) + 1);
  for (int t = 0; t <= params.depth(); ++t) {
    by_level[static_cast<std::size_t>(t)] = leaf_pair_distance(params, t);
  }
  const auto b = static_cast<std::uint64_t>(params.branching());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int level = params.depth();
      std::uint64_t a = leaves[i];
      std::uint64_t c = leaves[j];
      while (a != c) {
        a /= b;
        c /= b;
        --level;
      }
      m.dist[i][j] = m.dist[j][i] = by_level[static_cast<std::size_t>(level)];
    }
  }
  return m;
}

DistanceMatrix distance_matrix(const ColoredSample& s) {
  std::vector<std::uint64_t> leaves = s.red.points;
  leaves.insert(leaves.end(), s.blue.points.begin(), s.blue.points.end());
  DistanceMatrix m = distance_matrix(s.red.params, leaves);
  m.colors.assign(leaves.size(), 0);
  std::fill(m.colors.begin() + static_cast<std::ptrdiff_t>(s.red.points.size()), m.colors.end(),
            1);
  return m;
}

Rational brute_matching(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n > kMatchingCap) throw std::length_error("matching oracle capped at 16 points");
  if (n <= 1) return Rational(0);
  const IntegerGrid grid = normalize(m);

  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<std::int64_t> dp(full + 1, kInf);
  dp[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int i = std::countr_zero(mask);
    const std::size_t rest = mask ^ (std::size_t{1} << i);
    std::int64_t best = kInf;
    for (std::size_t bits = rest; bits != 0; bits &= bits - 1) {
      const int j = std::countr_zero(bits);
      const std::int64_t prev = dp[rest ^ (std::size_t{1} << j)];
      if (prev < kInf) best = std::min(best, prev + grid.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    dp[mask] = best;
  }
  if (n % 2 == 0) return degrid(dp[full], grid.denom);
  std::int64_t best = kInf;
  for (std::size_t x = 0; x < n; ++x) best = std::min(best, dp[full ^ (std::size_t{1} << x)]);
  return degrid(best, grid.denom);
}

Rational brute_tsp(const DistanceMatrix& m, bool alternating) {
  const std::size_t n = m.size();
  if (n > kTourCap) throw std::length_error("tour oracle capped at 16 points");
  if (alternating) {
    const std::size_t reds =
        static_cast<std::size_t>(std::count(m.colors.begin(), m.colors.end(), 0));
    if (m.colors.size() != n || reds * 2 != n) {
      throw std::domain_error("alternating tour needs balanced colors");
    }
  }
  if (n <= 1) return Rational(0);
  const IntegerGrid grid = normalize(m);
  if (n == 2) return degrid(2 * grid.entries[0][1], grid.denom);

  // Held-Karp with fixed start 0.
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::vector<std::int64_t>> dp(states,
                                            std::vector<std::int64_t>(n, kInf));
  dp[1][0] = 0;
  for (std::size_t mask = 1; mask < states; ++mask) {
    if ((mask & 1) == 0) continue;
    for (std::size_t last = 0; last < n; ++last) {
      const std::int64_t here = dp[mask][last];
      if (here >= kInf) continue;
      for (std::size_t next = 1; next < n; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        if (alternating && m.colors[last] == m.colors[next]) continue;
        auto& slot = dp[mask | (std::size_t{1} << next)][next];
        slot = std::min(slot, here + grid.entries[last][next]);
      }
    }
  }
  std::int64_t best = kInf;
  for (std::size_t last = 1; last < n; ++last) {
    if (dp[states - 1][last] >= kInf) continue;
    if (alternating && m.colors[last] == m.colors[0]) continue;
    best = std::min(best, dp[states - 1][last] + grid.entries[last][0]);
  }
  if (best >= kInf) throw std::domain_error("no feasible tour");
  return degrid(best, grid.denom);
}

Rational brute_mst(const DistanceMatrix& m, bool bichromatic) {
  const std::size_t n = m.size();
  if (n == 0) throw std::domain_error("spanning tree needs at least one point");
  if (bichromatic) {
    const std::size_t reds =
        static_cast<std::size_t>(std::count(m.colors.begin(), m.colors.end(), 0));
    if (m.colors.size() != n || reds == 0 || reds == n) {
      throw std::domain_error("bichromatic spanning tree needs both colors");
    }
  }
  struct Edge {
    Rational w;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bichromatic && m.colors[i] == m.colors[j]) continue;
      edges.push_back(Edge{m.dist[i][j], i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.w < y.w; });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  Rational cost = 0;
  std::size_t joined = 0;
  for (const Edge& e : edges) {
    const std::size_t ra = find(e.a);
    const std::size_t rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    cost += e.w;
    if (++joined == n - 1) break;
  }
  if (joined != n - 1) throw std::domain_error("instance is not connectable");
  return cost;
}

}  // namespace hstopt
