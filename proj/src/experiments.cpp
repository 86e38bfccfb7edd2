#include "hstopt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hstopt/bi_solvers.hpp"
#include "hstopt/closed_form.hpp"
#include "hstopt/mono_solvers.hpp"

namespace hstopt {

const char* functional_name(Functional f) {
  switch (f) {
    case Functional::MonoMatching: return "mono-matching";
    case Functional::MonoTsp: return "mono-tsp";
    case Functional::MonoMst: return "mono-mst";
    case Functional::BiMatching: return "bi-matching";
    case Functional::BiMst: return "bi-mst";
    case Functional::BiTspUpper: return "bi-tsp-upper";
    case Functional::BiTspLower: return "bi-tsp-lower";
  }
  return "?";
}

Functional parse_functional(const std::string& name) {
  for (Functional f : {Functional::MonoMatching, Functional::MonoTsp, Functional::MonoMst,
                       Functional::BiMatching, Functional::BiMst, Functional::BiTspUpper,
                       Functional::BiTspLower}) {
    if (name == functional_name(f)) return f;
  }
  throw std::invalid_argument("unknown functional: " + name);
}

double evaluate_functional(const ExperimentConfig& cfg, std::uint64_t stream) {
  switch (cfg.functional) {
    case Functional::MonoMatching:
      return to_double(matching_cost(sample_leaves(cfg.params, cfg.n, cfg.seed, stream)).total);
    case Functional::MonoTsp:
      return to_double(
          induced_tour_cost(sample_leaves(cfg.params, cfg.n, cfg.seed, stream),
                            cfg.tour_include_root)
              .total);
    case Functional::MonoMst:
      return to_double(mst_cost(sample_leaves(cfg.params, cfg.n, cfg.seed, stream)).total);
    case Functional::BiMatching:
      return to_double(bi_matching_cost(sample_colored(cfg.params, cfg.n, cfg.seed, stream)));
    case Functional::BiMst:
      return to_double(bi_mst_cost_exact(sample_colored(cfg.params, cfg.n, cfg.seed, stream)));
    case Functional::BiTspUpper:
      return to_double(bi_tsp_bounds(sample_colored(cfg.params, cfg.n, cfg.seed, stream)).upper);
    case Functional::BiTspLower:
      return to_double(bi_tsp_bounds(sample_colored(cfg.params, cfg.n, cfg.seed, stream)).lower);
  }
  throw std::logic_error("unreachable");
}

EstimateReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw std::domain_error("need at least one trial");
  for (std::size_t i = 0; i + 1 < cfg.tail_grid.size(); ++i) {
    if (!(cfg.tail_grid[i] <= cfg.tail_grid[i + 1]) || cfg.tail_grid[i] < 0) {
      throw std::domain_error("tail grid must be nonnegative and increasing");
    }
  }
  const auto start = std::chrono::steady_clock::now();

  EstimateReport report;
  report.trials = cfg.trials;
  report.values.assign(cfg.trials, 0.0);

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, cfg.trials));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
      report.values[i] = evaluate_functional(cfg, i);
    }
  } else {
    // Static chunking: each stream's value depends only on (seed, stream),
    // so the filled vector is identical for every worker count.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < cfg.trials; i += workers) {
          report.values[i] = evaluate_functional(cfg, i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Aggregation in ascending stream order.
  double sum = 0;
  report.min = report.values.front();
  report.max = report.values.front();
  for (double v : report.values) {
    sum += v;
    report.min = std::min(report.min, v);
    report.max = std::max(report.max, v);
  }
  report.mean = sum / static_cast<double>(cfg.trials);

  double sq = 0;
  for (double v : report.values) sq += (v - report.mean) * (v - report.mean);
  report.std_error = cfg.trials > 1
                         ? std::sqrt(sq / static_cast<double>(cfg.trials - 1)) /
                               std::sqrt(static_cast<double>(cfg.trials))
                         : 0.0;

  std::vector<double> sorted = report.values;
  std::sort(sorted.begin(), sorted.end());
  report.median = cfg.trials % 2 == 1
                      ? sorted[cfg.trials / 2]
                      : 0.5 * (sorted[cfg.trials / 2 - 1] + sorted[cfg.trials / 2]);

  for (double t : cfg.tail_grid) {
    std::uint64_t exceed = 0;
    for (double v : report.values) {
      if (std::abs(v - report.mean) >= t) ++exceed;
    }
    report.tail.emplace_back(t, static_cast<double>(exceed) / static_cast<double>(cfg.trials));
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

TailVerdict compare_tail(const EstimateReport& report,
                         const std::function<double(double)>& bound) {
  if (report.tail.empty()) throw std::domain_error("empty tail grid");
  TailVerdict verdict;
  verdict.worst_margin = -std::numeric_limits<double>::infinity();
  for (const auto& [t, empirical] : report.tail) {
    TailVerdict::Point point;
    point.t = t;
    point.empirical = empirical;
    point.bound = bound(t);
    point.slack =
        3.0 * std::sqrt(empirical * (1.0 - empirical) / static_cast<double>(report.trials));
    point.pass = empirical <= point.bound + point.slack;
    verdict.worst_margin = std::max(verdict.worst_margin,
                                    empirical - (point.bound + point.slack));
    verdict.pass = verdict.pass && point.pass;
    verdict.points.push_back(point);
  }
  return verdict;
}

std::vector<SweepRow> scaling_sweep(const ExperimentConfig& base,
                                    const std::vector<std::uint64_t>& n_list) {
  if (n_list.empty()) throw std::domain_error("empty n list");
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (std::uint64_t n : n_list) {
    ExperimentConfig cfg = base;
    cfg.n = n;
    const EstimateReport report = run_experiment(cfg);
    SweepRow row;
    row.n = n;
    row.mean = report.mean;
    row.std_error = report.std_error;
    switch (base.functional) {
      case Functional::MonoMatching:
      case Functional::MonoTsp:
      case Functional::MonoMst:
      case Functional::BiMst:
        row.scale = to_double(geometric_level_sum(cfg.params, effective_height(cfg.params, n)));
        break;
      case Functional::BiMatching:
        row.scale = bi_matching_scaling(cfg.params, n);
        break;
      case Functional::BiTspUpper:
      case Functional::BiTspLower:
        row.scale = bi_tour_scaling(cfg.params, n);
        break;
    }
    row.ratio = row.mean / row.scale;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hstopt
