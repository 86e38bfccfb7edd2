#include "hstopt/closed_form.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hstopt {

Rational geometric_level_sum(const HstParams& params, int h) {
  if (h < 0 || h > params.depth()) throw std::domain_error("h out of [0, depth]");
  const Rational growth = Rational(params.branching()) * params.lambda();
  Rational sum = 0;
  Rational term = 1;
  for (int k = 1; k <= h; ++k) {
    term *= growth;
    sum += term;
  }
  return sum;
}

Rational parity_prob(const Rational& r, std::uint64_t n) {
  if (!(r > 0 && r <= 1)) throw std::domain_error("r must lie in (0, 1]");
  return Rational(1, 2) - Rational(1, 2) * rational_pow(1 - 2 * r, n);
}

Rational order_stat_prob(std::uint64_t m, std::uint64_t n, std::uint64_t i, std::uint64_t j) {
  if (m == 0 || n == 0 || i < 1 || i > j || j > m) {
    throw std::domain_error("order_stat_prob needs 1 <= i <= j <= m, n >= 1");
  }
  const Int total = int_pow(Int(m), n);
  const Int hit = int_pow(Int(m - i + 1), n) - int_pow(Int(m - j), n);
  return Rational(hit, total);
}

Rational expected_tour_with_root_exact(const HstParams& params, std::uint64_t n) {
  if (n == 0) throw std::domain_error("expected tour needs n >= 1");
  Rational sum = 0;
  const Rational growth = Rational(params.branching()) * params.lambda();
  Rational term = 1;
  Int width = 1;
  for (int level = 1; level <= params.depth(); ++level) {
    term *= growth;
    width *= params.branching();
    const Rational miss = rational_pow(1 - Rational(1, width), n);
    sum += term * (1 - miss);
  }
  return 2 * params.scale() * sum;
}

double expected_tour_with_root(const HstParams& params, std::uint64_t n) {
  return to_double(expected_tour_with_root_exact(params, n));
}

BoundEnvelope matching_envelope(const HstParams& params, std::uint64_t n) {
  const int h = n == 0 ? 0 : effective_height(params, n);
  const Rational sum = geometric_level_sum(params, h);
  const int b = params.branching();
  BoundEnvelope env;
  env.lower = params.scale() * Rational(b - 1, 4 * b) * sum;
  env.upper = params.scale() * Rational(b - 1, 2 * b) / (1 - params.lambda()) * sum;
  env.lower_valid = n > 0 && Int(n) >= int_pow(Int(b), static_cast<std::uint64_t>(h));
  env.description = "expected minimum matching envelope, h = " + std::to_string(h);
  return env;
}

Rational expected_violet_path_exact(const HstParams& params, std::uint64_t n_blue) {
  if (n_blue == 0) throw std::domain_error("expected violet path needs n >= 1");
  const std::uint64_t m = params.leaf_count_u64();
  Rational expectation = 0;
  // l levels up from the leaf: the catching ancestor sits at depth - l, and
  // the exact point-to-point distance there is leaf_pair_distance.
  std::uint64_t lo = 1;  // b^{l-1}
  for (int l = 1; l <= params.depth(); ++l) {
    const std::uint64_t hi = lo * static_cast<std::uint64_t>(params.branching());
    const Rational p = order_stat_prob(m, n_blue, lo + 1, hi);
    expectation += leaf_pair_distance(params, params.depth() - l) * p;
    lo = hi;
  }
  return expectation;
}

double expected_violet_path(const HstParams& params, std::uint64_t n_blue) {
  return to_double(expected_violet_path_exact(params, n_blue));
}

double azuma_tail(double t, std::uint64_t n, double sigma_per_step) {
  if (t < 0 || n == 0 || sigma_per_step <= 0) throw std::domain_error("bad azuma arguments");
  const double sigma_sq = static_cast<double>(n) * sigma_per_step * sigma_per_step;
  return 2.0 * std::exp(-(t * t) / (2.0 * sigma_sq));
}

double iso_tail(double t, std::uint64_t n) {
  if (t < 0 || n == 0) throw std::domain_error("bad isoperimetric arguments");
  return 4.0 * std::exp(-(t * t) / (8.0 * static_cast<double>(n)));
}

double concentration_tail(const HstParams& params, double t, std::uint64_t n, double c) {
  if (t < 0 || n == 0 || c <= 0) throw std::domain_error("bad tail arguments");
  const Rational growth = Rational(params.branching()) * params.lambda();
  if (growth < 1) {
    throw std::domain_error("concentration tail needs b*lambda >= 1");
  }
  const double dn = static_cast<double>(n);
  if (growth == 1) {
    return 8.0 * std::exp(-std::pow(static_cast<double>(params.branching()), t / c) / (8.0 * dn));
  }
  const double exponent = 2.0 / (std::log(to_double(growth)) / std::log(params.branching()));
  return 8.0 * std::exp(-std::pow(t, exponent) / (c * dn));
}

RealEnvelope discrepancy_moment_bounds(std::uint64_t n, const Rational& p) {
  if (!(p > 0 && p <= Rational(1, 2))) throw std::domain_error("p must lie in (0, 1/2]");
  if (Rational(n) * p < 1) throw std::domain_error("needs n >= 1/p");
  const double dp = to_double(p);
  const double dn = static_cast<double>(n);
  const double variance = 2.0 * dn * dp * (1.0 - dp);
  const double fourth = variance + 24.0 * dn * (dn - 1.0) * dp * dp * (1.0 - dp) * (1.0 - dp);
  RealEnvelope env;
  env.upper = std::sqrt(variance);
  env.lower = std::pow(variance, 1.5) / std::sqrt(fourth);
  return env;
}

namespace {

double sqrt_b_level_sum(const HstParams& params, std::uint64_t n) {
  const int h = effective_height(params, n);
  const double growth = std::sqrt(static_cast<double>(params.branching())) *
                        to_double(params.lambda());
  double sum = 0;
  double term = 1;
  for (int i = 1; i <= h; ++i) {
    term *= growth;
    sum += term;
  }
  return sum;
}

}  // namespace

double bi_tour_scaling(const HstParams& params, std::uint64_t n) {
  if (n == 0) throw std::domain_error("scaling needs n >= 1");
  return std::sqrt(static_cast<double>(n)) * sqrt_b_level_sum(params, n);
}

double bi_matching_scaling(const HstParams& params, std::uint64_t n) {
  if (n == 0) throw std::domain_error("scaling needs n >= 1");
  return std::sqrt(static_cast<double>(params.branching()) * static_cast<double>(n)) *
         sqrt_b_level_sum(params, n);
}

namespace {

struct Sweep {
  InequalityReport::Entry entry;

  void check(bool ok, const std::string& witness) {
    ++entry.points;
    if (!ok && entry.failures++ == 0) entry.first_counterexample = witness;
  }
};

std::string describe(std::initializer_list<std::pair<const char*, double>> values) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : values) {
    if (!first) out << ", ";
    out << name << " = " << value;
    first = false;
  }
  return out.str();
}

}  // namespace

InequalityReport check_analytic_inequalities(Seed seed, std::uint64_t points_per_inequality) {
  SplitMix64 gen(seed);
  InequalityReport report;

  {  // (1 + r/n)^n strictly between e^{r/2} and e^r for n > r.
    Sweep sweep;
    sweep.entry.name = "(1+r/n)^n in (e^{r/2}, e^r)";
    while (sweep.entry.points < points_per_inequality) {
      const double r = 50.0 * gen.next_unit() + 1e-6;
      const std::uint64_t n =
          static_cast<std::uint64_t>(r) + 1 + gen.next_below(1000000);
      const double log_value = static_cast<double>(n) * std::log1p(r / static_cast<double>(n));
      sweep.check(r / 2 < log_value && log_value < r,
                  describe({{"r", r}, {"n", static_cast<double>(n)}}));
    }
    report.entries.push_back(sweep.entry);
  }

  {  // (1 - r/n)^n strictly between e^{-3r/2} and e^{-r} for n > 3r.
    Sweep sweep;
    sweep.entry.name = "(1-r/n)^n in (e^{-3r/2}, e^{-r})";
    while (sweep.entry.points < points_per_inequality) {
      const double r = 50.0 * gen.next_unit() + 1e-6;
      const std::uint64_t n =
          static_cast<std::uint64_t>(3 * r) + 1 + gen.next_below(1000000);
      const double log_value = static_cast<double>(n) * std::log1p(-r / static_cast<double>(n));
      sweep.check(-1.5 * r < log_value && log_value < -r,
                  describe({{"r", r}, {"n", static_cast<double>(n)}}));
    }
    report.entries.push_back(sweep.entry);
  }

  {  // n (1 - 1/z)^n < z for z >= 1, n >= 1.
    Sweep sweep;
    sweep.entry.name = "n(1-1/z)^n < z";
    while (sweep.entry.points < points_per_inequality) {
      const double z = 1.0 + 1e6 * gen.next_unit() * gen.next_unit();
      const std::uint64_t n = 1 + gen.next_below(1000000);
      const double lhs_log =
          std::log(static_cast<double>(n)) + static_cast<double>(n) * std::log1p(-1.0 / z);
      sweep.check(lhs_log < std::log(z), describe({{"z", z}, {"n", static_cast<double>(n)}}));
    }
    report.entries.push_back(sweep.entry);
  }

  {  // Catch-probability lower bound: (1-z)^n <= (4/5)(1-z/b)^n, z = b^{l-d}.
    Sweep sweep;
    sweep.entry.name = "P(b^d,n,b^{l-1}+1,b^l) >= (1-b^{l-d-1})^n / 5";
    const double log_four_fifths = std::log(0.8);
    while (sweep.entry.points < points_per_inequality) {
      const int b = 2 + static_cast<int>(gen.next_below(7));
      const int d = 1 + static_cast<int>(gen.next_below(6));
      double floor_n = std::pow(b, d);
      if (floor_n < 2) floor_n = 2;
      const std::uint64_t n = static_cast<std::uint64_t>(floor_n) + gen.next_below(1000000);
      const int l = 1 + static_cast<int>(gen.next_below(static_cast<std::uint64_t>(d)));
      const double z = std::pow(b, l - d);
      const double lhs = z >= 1.0 ? -INFINITY : static_cast<double>(n) * std::log1p(-z);
      const double rhs =
          log_four_fifths + static_cast<double>(n) * std::log1p(-z / b);
      sweep.check(lhs <= rhs, describe({{"b", static_cast<double>(b)},
                                        {"d", static_cast<double>(d)},
                                        {"n", static_cast<double>(n)},
                                        {"l", static_cast<double>(l)}}));
    }
    report.entries.push_back(sweep.entry);
  }

  {  // a_l / a_{l+1} >= 1/lambda past the cutoff, a_l = la^{1-l}(1-b^{l-d-1})^n.
    Sweep sweep;
    sweep.entry.name = "a_l / a_{l+1} >= 1/lambda beyond cutoff";
    while (sweep.entry.points < points_per_inequality) {
      const int b = 2 + static_cast<int>(gen.next_below(7));
      const int d = 1 + static_cast<int>(gen.next_below(6));
      const double lambda = 0.05 + 0.9 * gen.next_unit();
      const double min_n =
          std::max(std::pow(b, d), 4.0 * std::log(1.0 / lambda));
      const std::uint64_t n = static_cast<std::uint64_t>(min_n) + 1 + gen.next_below(1000000);
      const double cutoff = std::log(8.0 * std::log(1.0 / lambda)) / std::log(b) + 1.0;
      int l0 = 1;
      if (std::isfinite(cutoff) && cutoff > 1.0) l0 = static_cast<int>(std::ceil(cutoff));
      bool ok = true;
      double bad_l = 0;
      for (int l = l0; l <= d; ++l) {
        const double z = std::pow(b, l - d);
        const double log_next = z >= 1.0 ? -INFINITY : std::log1p(-z);
        const double log_ratio = std::log(lambda) +
                                 static_cast<double>(n) * (std::log1p(-z / b) - log_next);
        if (!(log_ratio >= -std::log(lambda))) {
          ok = false;
          bad_l = l;
          break;
        }
      }
      sweep.check(ok, describe({{"b", static_cast<double>(b)},
                                {"d", static_cast<double>(d)},
                                {"lambda", lambda},
                                {"n", static_cast<double>(n)},
                                {"l", bad_l}}));
    }
    report.entries.push_back(sweep.entry);
  }

  return report;
}

}  // namespace hstopt
