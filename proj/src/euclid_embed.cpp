#include "hstopt/euclid_embed.hpp"

#include <bit>
#include <stdexcept>

namespace hstopt {

namespace {

int log2_exact(std::uint64_t s) {
  if (s < 2 || (s & (s - 1)) != 0) {
    throw std::invalid_argument("cells_per_axis must be a power of two >= 2");
  }
  return std::countr_zero(s);
}

// Smallest multiple of 2^-21 at or above sqrt(d)/2; equals 1/2 exactly for
// d = 1 and 2^(k-1) exactly for d = 4^k.
Rational grid_scale(int dim) {
  const Int target = Int(dim) << 40;  // d * 2^40; scale = ceil(sqrt(target)) / 2^21
  Int root = boost::multiprecision::sqrt(target);
  if (root * root < target) ++root;
  return Rational(root, Int(1) << 21);
}

}  // namespace

GridHst build_grid_hst(const GridSpec& spec) {
  if (spec.dim < 1 || spec.dim > 16) throw std::invalid_argument("dimension must be in [1, 16]");
  const int depth = log2_exact(spec.cells_per_axis);
  const int branching = 1 << spec.dim;
  return GridHst{HstParams(branching, depth, Rational(1, 2), grid_scale(spec.dim)), spec};
}

std::vector<Rational> GridHst::leaf_point(std::uint64_t leaf) const {
  std::vector<std::uint64_t> axis_index(static_cast<std::size_t>(spec.dim), 0);
  // Digits of the leaf address, most significant level first; each digit
  // carries one halving bit per axis.
  for (int level = 0; level < params.depth(); ++level) {
    const int shift = spec.dim * (params.depth() - 1 - level);
    const std::uint64_t digit = (leaf >> shift) & ((std::uint64_t{1} << spec.dim) - 1);
    for (int axis = 0; axis < spec.dim; ++axis) {
      axis_index[static_cast<std::size_t>(axis)] =
          (axis_index[static_cast<std::size_t>(axis)] << 1) | ((digit >> axis) & 1);
    }
  }
  std::vector<Rational> point;
  point.reserve(static_cast<std::size_t>(spec.dim));
  for (int axis = 0; axis < spec.dim; ++axis) {
    point.emplace_back(Int(2 * axis_index[static_cast<std::size_t>(axis)] + 1),
                       Int(2 * spec.cells_per_axis));
  }
  return point;
}

std::uint64_t point_to_leaf(const GridHst& grid, const std::vector<Rational>& point) {
  if (point.size() != static_cast<std::size_t>(grid.spec.dim)) {
    throw std::invalid_argument("point dimension mismatch");
  }
  const std::uint64_t s = grid.spec.cells_per_axis;
  std::uint64_t leaf = 0;
  for (int level = 0; level < grid.params.depth(); ++level) {
    std::uint64_t digit = 0;
    for (int axis = 0; axis < grid.spec.dim; ++axis) {
      const Rational& x = point[static_cast<std::size_t>(axis)];
      if (x < 0 || x > 1) throw std::invalid_argument("coordinates must lie in [0, 1]");
      const Rational scaled = x * Rational(s);
      std::uint64_t cell = (numerator(scaled) / denominator(scaled)).convert_to<std::uint64_t>();
      if (cell >= s) cell = s - 1;  // x == 1
      digit |= ((cell >> (grid.params.depth() - 1 - level)) & 1) << axis;
    }
    leaf = (leaf << grid.spec.dim) | digit;
  }
  return leaf;
}

DominationVerdict check_domination(const GridSpec& spec, Seed seed) {
  const GridHst grid = build_grid_hst(spec);
  const std::uint64_t leaves = grid.params.leaf_count_u64();
  const std::uint64_t all_pairs = leaves * (leaves - 1) / 2;
  constexpr std::uint64_t kExhaustiveCap = std::uint64_t{1} << 16;

  DominationVerdict verdict;
  auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
    ++verdict.pairs_checked;
    const Rational tree = distance(grid.params, grid.params.leaf(a), grid.params.leaf(b));
    const auto pa = grid.leaf_point(a);
    const auto pb = grid.leaf_point(b);
    Rational euclid_sq = 0;
    for (std::size_t axis = 0; axis < pa.size(); ++axis) {
      const Rational delta = pa[axis] - pb[axis];
      euclid_sq += delta * delta;
    }
    if (tree * tree < euclid_sq) {
      verdict.ok = false;
      if (!verdict.violation) verdict.violation = {a, b};
    }
  };

  if (all_pairs <= kExhaustiveCap) {
    for (std::uint64_t a = 0; a < leaves; ++a) {
      for (std::uint64_t b = a + 1; b < leaves; ++b) check_pair(a, b);
    }
  } else {
    SplitMix64 gen(seed);
    for (std::uint64_t i = 0; i < kExhaustiveCap; ++i) {
      const std::uint64_t a = gen.next_below(leaves);
      std::uint64_t b = gen.next_below(leaves - 1);
      if (b >= a) ++b;
      check_pair(a, b);
    }
  }
  return verdict;
}

StretchTable shifted_family_stretch(const GridSpec& spec) {
  if (spec.dim != 1) {
    throw std::invalid_argument("the shifted torus family is defined for d = 1 only");
  }
  const std::uint64_t n = spec.cells_per_axis;
  log2_exact(n);
  const int torus_depth = log2_exact(2 * n);
  const HstParams torus_params(2, torus_depth, Rational(1, 2), Rational(1, 2));

  // Point j of the doubled interval sits at (2j+1)/(2n), j in [0, 2n); the
  // first n are the original grid points.  In the tree shifted by sigma,
  // point j occupies leaf (j - sigma) mod 2n.
  auto tree_distance = [&](std::uint64_t sigma, std::uint64_t p, std::uint64_t q) {
    const std::uint64_t lp = (p + 2 * n - sigma) % (2 * n);
    const std::uint64_t lq = (q + 2 * n - sigma) % (2 * n);
    int level = torus_depth;
    std::uint64_t a = lp, b = lq;
    while (a != b) {
      a >>= 1;
      b >>= 1;
      --level;
    }
    return leaf_pair_distance(torus_params, level);
  };

  StretchTable table;
  table.max_expected_stretch = 0;
  table.min_shift_ratio = 0;
  bool first_ratio = true;
  for (std::uint64_t p = 0; p < n; ++p) {
    for (std::uint64_t q = p + 1; q < n; ++q) {
      const Rational gap = Rational(q - p, n);  // |x_q - x_p| on the line
      const Rational wrapped = 2 - gap;
      const Rational torus = std::min(gap, wrapped);
      Rational sum = 0;
      for (std::uint64_t sigma = 0; sigma < n; ++sigma) {
        const Rational ratio = tree_distance(sigma, p, q) / torus;
        sum += ratio;
        if (first_ratio || ratio < table.min_shift_ratio) {
          table.min_shift_ratio = ratio;
          first_ratio = false;
        }
      }
      StretchRow row{p, q, torus, sum / Rational(n)};
      if (row.expected_stretch > table.max_expected_stretch) {
        table.max_expected_stretch = row.expected_stretch;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace hstopt
