#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hstopt/hst.hpp"
#include "hstopt/sampling.hpp"

namespace hstopt {

// Exact envelope for an expected cost; the lower side is only meaningful
// when the sample is dense enough (n >= b^h), flagged by lower_valid.
struct BoundEnvelope {
  Rational lower;
  Rational upper;
  bool lower_valid = true;
  std::string description;
};

struct RealEnvelope {
  double lower = 0;
  double upper = 0;
};

// sum_{k=1..h} (b*lambda)^k, exact.  0 <= h <= depth.
Rational geometric_level_sum(const HstParams& params, int h);

// P[X(v) odd] for a binomial count with per-draw probability r and n draws:
// 1/2 - 1/2 (1 - 2r)^n.  Exact; 0 < r <= 1.
Rational parity_prob(const Rational& r, std::uint64_t n);

// P(m, n, i, j): probability that the minimum of n uniform draws from
// {1..m} lands in [i, j] = ((m-i+1)^n - (m-j)^n) / m^n.  1 <= i <= j <= m.
Rational order_stat_prob(std::uint64_t m, std::uint64_t n, std::uint64_t i, std::uint64_t j);

// Expected cost of the tour through a uniform n-point sample and the root:
// 2 * scale * sum_l (b*lambda)^l (1 - (1 - b^-l)^n), evaluated exactly.
Rational expected_tour_with_root_exact(const HstParams& params, std::uint64_t n);
double expected_tour_with_root(const HstParams& params, std::uint64_t n);

// Envelope for the expected minimum matching cost of n uniform points.
// Per-transit weight at a level-k vertex lies in
// [2 scale lambda^{k+1}, 2 scale lambda^{k+1}/(1-lambda)] and the expected
// transit count in [(b-1)/8, (b-1)/4] (the lower end requiring a full
// sample), which gives
//   lower = scale (b-1)/(4b)        * sum_{k=1..h} (b lambda)^k,
//   upper = scale (b-1)/(2b(1-la)) * sum_{k=1..h} (b lambda)^k,
// with h the effective height; the lower side is valid when n >= b^h.
BoundEnvelope matching_envelope(const HstParams& params, std::uint64_t n);

// Expected distance from a fixed point to its nearest opposite-colored
// point among n_blue uniform draws, summed over the exact level law of the
// lowest ancestor whose subtree catches an opposite point.
Rational expected_violet_path_exact(const HstParams& params, std::uint64_t n_blue);
double expected_violet_path(const HstParams& params, std::uint64_t n_blue);

// 2 exp(-t^2 / (2 n sigma_per_step^2)).
double azuma_tail(double t, std::uint64_t n, double sigma_per_step);

// 4 exp(-t^2 / (8 n)).
double iso_tail(double t, std::uint64_t n);

// Matching-functional concentration tail for b*lambda >= 1 with a
// caller-supplied constant c: the double-exponential form
// 8 exp(-b^{t/c} / (8n)) at b*lambda = 1, and the power-exponent form
// 8 exp(-t^{2/log_b(b lambda)} / (c n)) for b*lambda > 1.
double concentration_tail(const HstParams& params, double t, std::uint64_t n, double c);

// Moment bounds for |X| with X the difference of two iid Binomial(n, p):
//   upper = sqrt(2np(1-p)),
//   lower = (2np(1-p))^{3/2} / sqrt(2np(1-p) + 24n(n-1)p^2(1-p)^2).
// Needs n*p >= 1 and p <= 1/2.
RealEnvelope discrepancy_moment_bounds(std::uint64_t n, const Rational& p);

// sqrt(n)   * sum_{i=1..h} (sqrt(b) lambda)^i
double bi_tour_scaling(const HstParams& params, std::uint64_t n);
// sqrt(b n) * sum_{k=1..h} (sqrt(b) lambda)^k
double bi_matching_scaling(const HstParams& params, std::uint64_t n);

struct InequalityReport {
  struct Entry {
    std::string name;
    std::uint64_t points = 0;
    std::uint64_t failures = 0;
    std::string first_counterexample;
  };
  std::vector<Entry> entries;

  bool all_passed() const {
    for (const auto& e : entries) {
      if (e.failures > 0) return false;
    }
    return true;
  }
};

// Randomized sweeps of the auxiliary inequalities backing the bounds:
//   e^{r/2} < (1+r/n)^n < e^r                    for n > r,
//   e^{-3r/2} < (1-r/n)^n < e^{-r}               for n > 3r,
//   n (1-1/z)^n < z                              for z >= 1,
//   P(b^d, n, b^{l-1}+1, b^l) >= (1-b^{l-d-1})^n / 5
//                                                for b^d <= n, n > 1,
//   a_l / a_{l+1} >= 1/lambda beyond the cutoff log_b(8 ln(1/lambda)) + 1
//                                                for b^d <= n, n > 4 ln(1/lambda),
// each on >= `points_per_inequality` sampled parameter tuples.
InequalityReport check_analytic_inequalities(Seed seed,
                                             std::uint64_t points_per_inequality = 10000);

}  // namespace hstopt
