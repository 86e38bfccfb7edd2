#include <doctest.h>

#include <cstdlib>

#include "hstopt/bi_solvers.hpp"
#include "hstopt/mono_solvers.hpp"
#include "hstopt/oracles.hpp"
#include "test_support.hpp"

using namespace hstopt;
using namespace hstopt::testing;

namespace {
Rational rat(long long num, long long den = 1) { return Rational(num, den); }

LeafMultiset random_multiset(const HstParams& params, std::uint64_t max_n, SplitMix64& gen) {
  const std::uint64_t n = gen.next_below(max_n + 1);
  std::vector<std::uint64_t> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) pts.push_back(gen.next_below(params.leaf_count_u64()));
  return LeafMultiset{params, std::move(pts)};
}
}  // namespace

TEST_CASE("transit counts follow the parity formula") {
  HstParams star3(3, 1, rat(1, 2));
  const auto p1 = transit_counts(subtree_counts(make_multiset(star3, {0, 0, 1, 2})));
  CHECK(p1.transits.at(NodeId{0, 0}) == 1);
  CHECK_FALSE(p1.leftover);

  HstParams star2(2, 1, rat(1, 2));
  const auto p2 = transit_counts(subtree_counts(make_multiset(star2, {0, 1})));
  CHECK(p2.transits.at(NodeId{0, 0}) == 1);

  HstParams params(2, 2, rat(1, 2));
  const auto p3 = transit_counts(subtree_counts(make_multiset(params, {0, 1, 3})));
  CHECK(p3.transits.at(NodeId{1, 0}) == 1);
  CHECK(p3.transits.count(NodeId{1, 1}) == 0);
  CHECK(p3.transits.count(NodeId{0, 0}) == 0);
  CHECK(p3.leftover);
}

TEST_CASE("matching costs on pinned instances") {
  HstParams params(2, 2, rat(1, 2));
  CHECK(matching_cost(make_multiset(params, {0, 1})).total == rat(1, 2));
  CHECK(matching_cost(make_multiset(params, {0, 0})).total == 0);

  const auto square = make_multiset(params, {0, 1, 2, 3});
  const Rational oracle = brute_matching(distance_matrix(params, square.points));
  CHECK(oracle == 1);
  CHECK(matching_cost(square).total == oracle);
}

TEST_CASE("tour costs on pinned instances") {
  HstParams params(2, 2, rat(1, 2));
  CHECK(induced_tour_cost(make_multiset(params, {0, 1}), false).total == 1);

  const auto split = make_multiset(params, {0, 3});
  CHECK(brute_tsp(distance_matrix(params, split.points)) == 3);
  CHECK(induced_tour_cost(split, false).total == 3);

  CHECK(induced_tour_cost(make_multiset(params, {0}), false).total == 0);
  CHECK(induced_tour_cost(make_multiset(params, {0}), true).total == rat(3, 2));
  CHECK_THROWS_AS(induced_tour_cost(make_multiset(params, {}), false), std::domain_error);
}

TEST_CASE("spanning tree costs on pinned instances") {
  HstParams params(2, 2, rat(1, 2));
  const auto w = make_multiset(params, {0, 1, 3});
  CHECK(brute_mst(distance_matrix(params, w.points)) == 2);
  CHECK(mst_cost(w).total == 2);
  CHECK(mst_cost(make_multiset(params, {0, 1})).total == rat(1, 2));
  CHECK(mst_cost(make_multiset(params, {0, 0, 0})).total == 0);
  CHECK_THROWS_AS(mst_cost(make_multiset(params, {})), std::domain_error);
}

TEST_CASE("per-level costs add up to the total") {
  HstParams params(3, 3, rat(2, 5));
  SplitMix64 gen(11);
  for (int i = 0; i < 30; ++i) {
    const auto w = random_multiset(params, 12, gen);
    if (w.size() == 0) continue;
    for (const auto& cost :
         {matching_cost(w), induced_tour_cost(w, true), induced_tour_cost(w, false),
          mst_cost(w)}) {
      Rational sum = 0;
      for (const auto& level : cost.per_level) sum += level;
      CHECK(sum == cost.total);
    }
  }
}

TEST_CASE("solvers agree with the subset-DP oracles on random instances") {
  SplitMix64 gen(2024);
  int checked = 0;
  for (int b : {2, 3}) {
    for (int depth : {1, 2, 3}) {
      for (const Rational& lambda : {rat(1, 3), rat(1, 2), rat(3, 4)}) {
        HstParams params(b, depth, lambda);
        for (int rep = 0; rep < 8; ++rep) {
          const auto w = random_multiset(params, 10, gen);
          if (w.size() == 0) continue;
          const auto m = distance_matrix(params, w.points);
          CHECK(matching_cost(w).total == brute_matching(m));
          CHECK(induced_tour_cost(w, false).total == brute_tsp(m));
          CHECK(mst_cost(w).total == brute_mst(m));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("tour minus spanning tree lies in (0, diameter]") {
  SplitMix64 gen(17);
  HstParams params(3, 2, rat(3, 5), rat(1, 3));
  for (int rep = 0; rep < 50; ++rep) {
    const auto w = random_multiset(params, 20, gen);
    if (w.size() == 0) continue;
    bool multiple = false;
    for (std::uint64_t p : w.points) multiple |= p != w.points.front();
    if (!multiple) continue;
    const Rational gap = induced_tour_cost(w, false).total - mst_cost(w).total;
    CHECK(gap > 0);
    CHECK(gap <= diameter(params));
  }
}

TEST_CASE("transits plus leaf pairings account for floor(n/2) pairs") {
  SplitMix64 gen(23);
  HstParams params(3, 3, rat(1, 2));
  for (int rep = 0; rep < 40; ++rep) {
    const auto w = random_multiset(params, 25, gen);
    const auto counts = subtree_counts(w);
    const auto profile = transit_counts(counts);
    CHECK(profile.leftover == (w.size() % 2 == 1));
    std::uint64_t pairs = 0;
    for (const auto& [node, tau] : profile.transits) pairs += tau;
    for (const auto& [node, count] : counts.counts) {
      if (node.level == params.depth()) pairs += count / 2;
    }
    CHECK(pairs == w.size() / 2);
  }
}

TEST_CASE("transit counts respect the degree bound") {
  SplitMix64 gen(31);
  for (int b : {2, 3, 5}) {
    HstParams params(b, 3, rat(1, 2));
    for (int rep = 0; rep < 20; ++rep) {
      const auto w = random_multiset(params, 30, gen);
      const auto profile = transit_counts(subtree_counts(w));
      for (const auto& [node, tau] : profile.transits) {
        CHECK(tau <= static_cast<std::uint64_t>(b) / 2);
      }
    }
  }
}

TEST_CASE("matching and tour are smooth in the Hamming distance") {
  HstParams params(3, 3, rat(3, 5));
  const std::uint64_t n = 40;
  SplitMix64 gen(555);
  const Rational one_minus_lambda = 1 - params.lambda();
  for (int rep = 0; rep < 40; ++rep) {
    auto x = sample_leaves(params, n, 90, static_cast<std::uint64_t>(rep));
    auto y = x;
    const std::uint64_t k = 2 * (1 + gen.next_below(6));  // even, 2..12
    for (std::uint64_t i = 0; i < k; ++i) {
      const std::uint64_t pos = gen.next_below(n);
      std::uint64_t fresh;
      do {
        fresh = gen.next_below(params.leaf_count_u64());
      } while (fresh == y.points[pos]);
      y.points[pos] = fresh;
    }
    const Rational top = top_k_weight(params, k);
    const Rational match_gap = matching_cost(x).total - matching_cost(y).total;
    CHECK(boost::multiprecision::abs(match_gap) <= 2 * top / one_minus_lambda);
    const Rational tour_gap =
        induced_tour_cost(x, false).total - induced_tour_cost(y, false).total;
    CHECK(boost::multiprecision::abs(tour_gap) <= 8 * top / one_minus_lambda);
  }
}

TEST_CASE("monochromatic costs never exceed their bichromatic counterparts") {
  SplitMix64 gen(808);
  HstParams params(2, 3, rat(1, 2));
  for (int rep = 0; rep < 40; ++rep) {
    const std::uint64_t n = 1 + gen.next_below(5);
    const auto s = sample_colored(params, n, 313, static_cast<std::uint64_t>(rep));
    LeafMultiset merged{params, s.red.points};
    merged.points.insert(merged.points.end(), s.blue.points.begin(), s.blue.points.end());

    CHECK(matching_cost(merged).total <= bi_matching_cost(s));
    CHECK(mst_cost(merged).total <= bi_mst_cost_exact(s));
    const auto m = distance_matrix(s);
    CHECK(induced_tour_cost(merged, false).total <= brute_tsp(m, true));
  }
}
