#include <doctest.h>

#include <cmath>

#include "hstopt/euclid_embed.hpp"
#include "hstopt/mono_solvers.hpp"
#include "hstopt/oracles.hpp"
#include "test_support.hpp"

using namespace hstopt;
using namespace hstopt::testing;

namespace {
Rational rat(long long num, long long den = 1) { return Rational(num, den); }
}  // namespace

TEST_CASE("interval grid reproduces the dominating tree") {
  const auto grid = build_grid_hst(GridSpec{1, 8});
  CHECK(grid.params.branching() == 2);
  CHECK(grid.params.depth() == 3);
  CHECK(grid.params.lambda() == rat(1, 2));
  CHECK(grid.params.scale() == rat(1, 2));
  CHECK(diameter(grid.params) == rat(7, 8));
  CHECK(edge_weight(grid.params, NodeId{1, 0}) == rat(1, 4));

  // leaves sit at the cell midpoints in order
  for (std::uint64_t leaf = 0; leaf < 8; ++leaf) {
    CHECK(grid.leaf_point(leaf) == std::vector<Rational>{Rational(2 * leaf + 1, 16)});
  }
}

TEST_CASE("two-cell boundary case and rejection of bad sizes") {
  const auto grid = build_grid_hst(GridSpec{1, 2});
  CHECK(grid.leaf_point(0) == std::vector<Rational>{rat(1, 4)});
  CHECK(grid.leaf_point(1) == std::vector<Rational>{rat(3, 4)});
  CHECK(distance(grid.params, grid.params.leaf(0), grid.params.leaf(1)) == rat(1, 2));

  CHECK_THROWS_AS(build_grid_hst(GridSpec{1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(build_grid_hst(GridSpec{0, 4}), std::invalid_argument);

  const auto square = build_grid_hst(GridSpec{2, 2});
  CHECK(square.params.branching() == 4);
  CHECK(square.params.depth() == 1);
}

TEST_CASE("square grid interleaves one bit per axis") {
  const auto grid = build_grid_hst(GridSpec{2, 4});
  // leaf digits are level-major; within a digit, bit 0 halves axis 0 and
  // bit 1 halves axis 1
  const auto p = grid.leaf_point(0b0111);  // digits 01, 11
  CHECK(p[0] == rat(7, 8));  // axis 0 bits 1,1 -> cell 3
  CHECK(p[1] == rat(3, 8));  // axis 1 bits 0,1 -> cell 1

  auto cell_of = [](const Rational& coord, std::uint64_t s) {
    // coord = (2k+1)/(2s)
    const Rational doubled = coord * Rational(2 * s);
    return ((numerator(doubled) - 1) / 2).convert_to<std::uint64_t>();
  };
  std::vector<bool> seen(16, false);
  for (std::uint64_t leaf = 0; leaf < 16; ++leaf) {
    const auto q = grid.leaf_point(leaf);
    const std::uint64_t flat = cell_of(q[0], 4) * 4 + cell_of(q[1], 4);
    CHECK_FALSE(seen[static_cast<std::size_t>(flat)]);
    seen[static_cast<std::size_t>(flat)] = true;
  }
}

TEST_CASE("tree distances dominate Euclidean distances on the grid") {
  for (std::uint64_t s : {2ULL, 8ULL, 64ULL, 256ULL}) {
    const auto verdict = check_domination(GridSpec{1, s});
    INFO("s = ", s);
    CHECK(verdict.ok);
  }
  for (std::uint64_t s : {2ULL, 4ULL, 16ULL}) {
    const auto verdict = check_domination(GridSpec{2, s});
    INFO("d = 2, s = ", s);
    CHECK(verdict.ok);
  }
  CHECK(check_domination(GridSpec{3, 4}).ok);
  // large instance goes through the sampled path
  const auto sampled = check_domination(GridSpec{2, 32});
  CHECK(sampled.ok);
  CHECK(sampled.pairs_checked == (std::uint64_t{1} << 16));
}

TEST_CASE("shifted torus family stretch") {
  CHECK_THROWS_AS(shifted_family_stretch(GridSpec{2, 4}), std::invalid_argument);

  const auto two = shifted_family_stretch(GridSpec{1, 2});
  REQUIRE(two.rows.size() == 1);
  CHECK(two.rows[0].torus_distance == rat(1, 2));
  CHECK(two.rows[0].expected_stretch == 1);  // exact average over both shifts

  const auto eight = shifted_family_stretch(GridSpec{1, 8});
  CHECK(eight.rows.size() == 28);
  CHECK(eight.max_expected_stretch == 2);
  CHECK(eight.max_expected_stretch <= 3);  // log2(8)
  CHECK(eight.min_shift_ratio == rat(1, 2));  // each shifted tree dominates half the torus metric

  for (const auto& row : eight.rows) {
    CHECK(row.expected_stretch > 0);
    CHECK(row.torus_distance > 0);
  }
}

TEST_CASE("points map to the leaves of their cells") {
  const auto grid = build_grid_hst(GridSpec{2, 4});
  // midpoints round-trip through their own leaf
  for (std::uint64_t leaf = 0; leaf < 16; ++leaf) {
    CHECK(point_to_leaf(grid, grid.leaf_point(leaf)) == leaf);
  }
  CHECK(point_to_leaf(grid, {rat(1), rat(1)}) ==
        point_to_leaf(grid, {rat(15, 16), rat(15, 16)}));
  CHECK_THROWS_AS(point_to_leaf(grid, {rat(1, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(point_to_leaf(grid, {rat(3, 2), rat(1, 2)}), std::invalid_argument);

  const auto line = build_grid_hst(GridSpec{1, 8});
  CHECK(point_to_leaf(line, {rat(1, 3)}) == 2);  // 8/3 -> cell 2
  CHECK(point_to_leaf(line, {rat(0)}) == 0);
}

TEST_CASE("tree costs dominate Euclidean costs for embedded point sets") {
  SplitMix64 gen(5150);
  const auto grid = build_grid_hst(GridSpec{1, 16});
  for (int rep = 0; rep < 20; ++rep) {
    const std::uint64_t n = 2 + gen.next_below(7);
    std::vector<std::uint64_t> leaves;
    for (std::uint64_t i = 0; i < n; ++i) leaves.push_back(gen.next_below(16));
    const LeafMultiset w{grid.params, leaves};

    // d = 1: Euclidean distances are exact rationals
    DistanceMatrix euclid;
    euclid.dist.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Rational diff = grid.leaf_point(leaves[i])[0] - grid.leaf_point(leaves[j])[0];
        euclid.dist[i][j] = diff < 0 ? Rational(-diff) : diff;
      }
    }
    CHECK(matching_cost(w).total >= brute_matching(euclid));
    CHECK(induced_tour_cost(w, false).total >= brute_tsp(euclid));
    CHECK(mst_cost(w).total >= brute_mst(euclid));
  }
}
