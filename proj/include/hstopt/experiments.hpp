#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hstopt/hst.hpp"
#include "hstopt/sampling.hpp"

namespace hstopt {

enum class Functional {
  MonoMatching,
  MonoTsp,
  MonoMst,
  BiMatching,
  BiMst,
  BiTspUpper,
  BiTspLower,
};

const char* functional_name(Functional f);
Functional parse_functional(const std::string& name);  // e.g. "mono-matching"

struct ExperimentConfig {
  HstParams params;
  std::uint64_t n = 1;
  std::uint64_t trials = 1;
  Seed seed = 0;
  Functional functional = Functional::MonoMatching;
  bool tour_include_root = false;       // only read by MonoTsp
  std::vector<double> tail_grid;        // nonnegative, increasing
  unsigned threads = 0;                 // 0: hardware concurrency
};

struct EstimateReport {
  double mean = 0;
  double std_error = 0;  // sample std / sqrt(trials); 0 for a single trial
  double median = 0;
  double min = 0;
  double max = 0;
  std::vector<std::pair<double, double>> tail;  // (t, P(|L - mean| >= t))
  std::uint64_t trials = 0;
  double wall_time_s = 0;
  std::vector<double> values;  // per-trial values, in stream order
};

// `trials` independent replications; replication i draws from
// (cfg.seed, stream = i) and the aggregation runs in ascending stream
// order, so the report is a pure function of the config regardless of the
// worker count.
EstimateReport run_experiment(const ExperimentConfig& cfg);

// Evaluates one replication of a functional; exposed for reuse in tests.
double evaluate_functional(const ExperimentConfig& cfg, std::uint64_t stream);

struct TailVerdict {
  struct Point {
    double t = 0;
    double empirical = 0;
    double bound = 0;
    double slack = 0;  // 3 binomial standard errors
    bool pass = true;
  };
  std::vector<Point> points;
  bool pass = true;
  double worst_margin = 0;  // max over points of empirical - (bound + slack)
};

// Pass at t iff empirical tail <= bound(t) + 3 binomial SE.
TailVerdict compare_tail(const EstimateReport& report,
                         const std::function<double(double)>& bound);

struct SweepRow {
  std::uint64_t n = 0;
  double mean = 0;
  double std_error = 0;
  double scale = 0;  // analytic reference for this functional at this n
  double ratio = 0;  // mean / scale
};

// Re-runs the experiment for each n and reports the ratio of the Monte
// Carlo mean to the analytic growth term: sum_{k<=h} (b lambda)^k for the
// monochromatic functionals and the bichromatic spanning tree,
// sqrt(bn) sum (sqrt(b) lambda)^k for bichromatic matching, and
// sqrt(n) sum (sqrt(b) lambda)^i for the bichromatic tour bounds.
std::vector<SweepRow> scaling_sweep(const ExperimentConfig& base,
                                    const std::vector<std::uint64_t>& n_list);

}  // namespace hstopt
