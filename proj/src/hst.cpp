#include "hstopt/hst.hpp"

#include <limits>
#include <stdexcept>

namespace hstopt {

namespace {

std::uint64_t checked_pow_u64(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > (std::uint64_t{1} << 62) / base) {
      throw std::domain_error("b^delta exceeds the 64-bit leaf address space");
    }
    result *= base;
  }
  return result;
}

}  // namespace

HstParams::HstParams(int branching, int depth, Rational lambda, Rational scale)
    : b_(branching), delta_(depth), lambda_(std::move(lambda)), scale_(std::move(scale)) {
  if (b_ < 2) throw std::invalid_argument("branching factor must be >= 2");
  if (delta_ < 1) throw std::invalid_argument("depth must be >= 1");
  if (!(lambda_ > 0 && lambda_ < 1)) throw std::invalid_argument("lambda must lie in (0,1)");
  if (!(scale_ > 0)) throw std::invalid_argument("scale must be positive");
  leaf_count_u64_ = checked_pow_u64(static_cast<std::uint64_t>(b_), delta_);
}

Int HstParams::leaf_count() const { return int_pow(Int(b_), static_cast<std::uint64_t>(delta_)); }

std::uint64_t HstParams::level_width(int level) const {
  if (level < 0 || level > delta_) throw std::domain_error("level out of range");
  std::uint64_t w = 1;
  for (int i = 0; i < level; ++i) w *= static_cast<std::uint64_t>(b_);
  return w;
}

bool HstParams::valid_node(const NodeId& v) const {
  return v.level >= 0 && v.level <= delta_ && v.index < level_width(v.level);
}

NodeId HstParams::leaf(std::uint64_t index) const {
  if (index >= leaf_count_u64_) throw std::domain_error("leaf index out of range");
  return NodeId{delta_, index};
}

NodeId HstParams::parent(const NodeId& v) const {
  if (v.level <= 0) throw std::domain_error("the root has no parent");
  return NodeId{v.level - 1, v.index / static_cast<std::uint64_t>(b_)};
}

NodeId HstParams::ancestor_at(const NodeId& v, int level) const {
  if (level < 0 || level > v.level) throw std::domain_error("ancestor level out of range");
  std::uint64_t idx = v.index;
  for (int l = v.level; l > level; --l) idx /= static_cast<std::uint64_t>(b_);
  return NodeId{level, idx};
}

Rational edge_weight(const HstParams& params, const NodeId& v) {
  if (!params.valid_node(v)) throw std::domain_error("invalid node");
  if (v.level == 0) throw std::domain_error("the root has no parent edge");
  return params.scale() * rational_pow(params.lambda(), static_cast<std::uint64_t>(v.level));
}

NodeId lca(const HstParams& params, const NodeId& u, const NodeId& v) {
  if (!params.valid_node(u) || !params.valid_node(v)) throw std::domain_error("invalid node");
  NodeId a = u;
  NodeId b = v;
  if (a.level > b.level) a = params.ancestor_at(a, b.level);
  if (b.level > a.level) b = params.ancestor_at(b, a.level);
  while (a.index != b.index) {
    a = params.parent(a);
    b = params.parent(b);
  }
  return a;
}

Rational tail_weight(const HstParams& params, int t) {
  if (t < 0 || t > params.depth()) throw std::domain_error("level out of range");
  // sum_{i=t+1..delta} lambda^i = (lambda^{t+1} - lambda^{delta+1}) / (1 - lambda)
  const Rational& l = params.lambda();
  Rational sum = (rational_pow(l, static_cast<std::uint64_t>(t) + 1) -
                  rational_pow(l, static_cast<std::uint64_t>(params.depth()) + 1)) /
                 (1 - l);
  return params.scale() * sum;
}

Rational leaf_pair_distance(const HstParams& params, int t) { return 2 * tail_weight(params, t); }

Rational distance(const HstParams& params, const NodeId& u, const NodeId& v) {
  if (u == v) return Rational(0);
  NodeId a = lca(params, u, v);
  auto one_way = [&](const NodeId& x) {
    // sum of edge weights from x up to the ancestor `a`
    return tail_weight(params, a.level) - tail_weight(params, x.level);
  };
  return one_way(u) + one_way(v);
}

Rational diameter(const HstParams& params) { return leaf_pair_distance(params, 0); }

int ceil_log(std::uint64_t base, std::uint64_t n) {
  if (base < 2 || n == 0) throw std::domain_error("ceil_log needs base >= 2, n >= 1");
  int h = 0;
  std::uint64_t p = 1;
  while (p < n) {
    if (p > std::numeric_limits<std::uint64_t>::max() / base) return h + 1;  // p*base > any n
    p *= base;
    ++h;
  }
  return h;
}

int effective_height(const HstParams& params, std::uint64_t n) {
  if (n == 0) throw std::domain_error("effective_height needs n >= 1");
  return std::min(params.depth(), ceil_log(static_cast<std::uint64_t>(params.branching()), n));
}

LiftResult lift(const HstParams& params, const NodeId& leaf, int target_level) {
  if (!params.valid_node(leaf) || leaf.level != params.depth()) {
    throw std::domain_error("lift expects a leaf");
  }
  if (target_level < 0 || target_level > params.depth()) {
    throw std::domain_error("target level out of range");
  }
  return LiftResult{params.ancestor_at(leaf, target_level), tail_weight(params, target_level)};
}

Rational top_k_weight(const HstParams& params, std::uint64_t k) {
  if (k == 0) throw std::domain_error("top_k_weight needs k >= 1");
  const int levels = ceil_log(static_cast<std::uint64_t>(params.branching()), k);
  Rational sum = 0;
  Rational term = 1;
  const Rational growth = Rational(params.branching()) * params.lambda();
  for (int i = 1; i <= levels; ++i) {
    term *= growth;
    sum += term;
  }
  return params.scale() * sum;
}

}  // namespace hstopt
