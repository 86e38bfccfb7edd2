// Command-line front end: exact solves, Monte Carlo estimation, and grid
// embedding checks, with reproducible seeding and machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hstopt/bi_solvers.hpp"
#include "hstopt/closed_form.hpp"
#include "hstopt/euclid_embed.hpp"
#include "hstopt/experiments.hpp"
#include "hstopt/mono_solvers.hpp"
#include "hstopt/oracles.hpp"

namespace {

using json = nlohmann::json;
using namespace hstopt;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct ModelFlags {
  int b = 2;
  int delta = 1;
  std::string lambda = "1/2";
  std::string scale = "1";
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--b", flags.b, "branching factor (>= 2)")->required();
  cmd->add_option("--delta", flags.delta, "depth (>= 1)")->required();
  cmd->add_option("--lambda", flags.lambda, "edge ratio as a rational literal p/q")->required();
  cmd->add_option("--scale", flags.scale, "global weight scale as a rational literal");
}

HstParams make_params(const ModelFlags& flags) {
  const Rational lambda = parse_rational(flags.lambda);
  if (flags.lambda.find('/') == std::string::npos) {
    throw std::invalid_argument("--lambda must be a fraction p/q");
  }
  return HstParams(flags.b, flags.delta, lambda, parse_rational(flags.scale));
}

json cost_json(const Rational& value) {
  return json{{"rational", to_fraction_string(value)}, {"decimal", to_double(value)}};
}

json params_json(const HstParams& params) {
  return json{{"b", params.branching()},
              {"delta", params.depth()},
              {"lambda", to_fraction_string(params.lambda())},
              {"scale", to_fraction_string(params.scale())}};
}

// Instance files are CSV with one point per row: leaf_index[,color] where
// color is r/red or b/blue; '#' starts a comment and a non-numeric header
// row is skipped.
struct Instance {
  std::vector<std::uint64_t> plain;
  std::vector<std::uint64_t> red;
  std::vector<std::uint64_t> blue;
  bool colored = false;
};

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  Instance instance;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string token;
    std::vector<std::string> fields;
    std::stringstream row(line);
    while (std::getline(row, token, ',')) {
      token.erase(0, token.find_first_not_of(" \t\r"));
      token.erase(token.find_last_not_of(" \t\r") + 1);
      fields.push_back(token);
    }
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    if (fields.empty()) continue;
    if (fields[0].find_first_not_of("0123456789") != std::string::npos) continue;  // header
    const std::uint64_t leaf = std::stoull(fields[0]);
    if (fields.size() == 1) {
      instance.plain.push_back(leaf);
    } else {
      instance.colored = true;
      const std::string& color = fields[1];
      if (color == "r" || color == "red") {
        instance.red.push_back(leaf);
      } else if (color == "b" || color == "blue") {
        instance.blue.push_back(leaf);
      } else {
        throw std::invalid_argument("unknown color '" + color + "' in " + path);
      }
    }
  }
  return instance;
}

void validate_leaves(const HstParams& params, const std::vector<std::uint64_t>& leaves) {
  for (std::uint64_t leaf : leaves) {
    if (leaf >= params.leaf_count_u64()) {
      throw std::invalid_argument("leaf index " + std::to_string(leaf) + " out of range");
    }
  }
}

json manifest_json(const std::string& command, const json& config, Seed seed,
                   double wall_time_s, const std::vector<std::string>& outputs) {
  return json{{"command", command}, {"config", config},   {"seed", seed},
              {"version", kVersion}, {"wall_time_s", wall_time_s}, {"outputs", outputs}};
}

int run_solve(const ModelFlags& model, const std::string& problem,
              const std::optional<std::string>& instance_path, std::uint64_t n, Seed seed,
              std::uint64_t stream, bool include_root, bool with_oracle) {
  const HstParams params = make_params(model);
  const bool bichromatic = problem.rfind("bi-", 0) == 0;

  LeafMultiset mono{params, {}};
  ColoredSample colored{{params, {}}, {params, {}}};
  if (instance_path) {
    const Instance instance = read_instance(*instance_path);
    if (bichromatic != instance.colored && !(instance.plain.empty() && instance.red.empty() &&
                                             instance.blue.empty())) {
      if (bichromatic && !instance.colored) {
        throw std::invalid_argument("bichromatic problem needs a colored instance file");
      }
      if (!bichromatic && instance.colored) {
        throw std::invalid_argument("monochromatic problem needs an uncolored instance file");
      }
    }
    mono.points = instance.plain;
    colored.red.points = instance.red;
    colored.blue.points = instance.blue;
    validate_leaves(params, instance.plain);
    validate_leaves(params, instance.red);
    validate_leaves(params, instance.blue);
  } else if (bichromatic) {
    colored = sample_colored(params, n, seed, stream);
  } else {
    mono = sample_leaves(params, n, seed, stream);
  }

  json out;
  out["problem"] = problem;
  out["params"] = params_json(params);
  out["seed"] = seed;

  bool oracle_match = true;
  auto report_oracle = [&](const Rational& solver_value, const Rational& oracle_value) {
    oracle_match = solver_value == oracle_value;
    out["oracle"] = {{"value", cost_json(oracle_value)},
                     {"verdict", oracle_match ? "MATCH" : "MISMATCH"}};
  };
  auto report_oracle_bounds = [&](const BoundedCost& bounds, const Rational& oracle_value) {
    oracle_match = bounds.lower <= oracle_value && oracle_value <= bounds.upper;
    out["oracle"] = {{"value", cost_json(oracle_value)},
                     {"verdict", oracle_match ? "MATCH" : "MISMATCH"}};
  };

  if (problem == "mono-matching" || problem == "mono-tsp" || problem == "mono-mst") {
    out["n"] = mono.size();
    SolutionCost cost;
    if (problem == "mono-matching") {
      cost = matching_cost(mono);
    } else if (problem == "mono-tsp") {
      cost = induced_tour_cost(mono, include_root);
      out["include_root"] = include_root;
    } else {
      cost = mst_cost(mono);
    }
    out["cost"] = cost_json(cost.total);
    json levels = json::array();
    for (const auto& level : cost.per_level) levels.push_back(cost_json(level));
    out["per_level"] = levels;
    if (with_oracle) {
      const auto matrix = distance_matrix(params, mono.points);
      if (problem == "mono-matching") {
        report_oracle(cost.total, brute_matching(matrix));
      } else if (problem == "mono-tsp") {
        if (include_root) throw std::invalid_argument("--oracle needs the rootless tour");
        report_oracle(cost.total, brute_tsp(matrix));
      } else {
        report_oracle(cost.total, brute_mst(matrix));
      }
    }
  } else if (problem == "bi-matching") {
    out["n"] = colored.red.size();
    const Rational cost = bi_matching_cost(colored);
    out["cost"] = cost_json(cost);
    if (with_oracle) {
      DistanceMatrix matrix = distance_matrix(colored);
      const Rational penalty = Rational(1000) * (1 + diameter(params)) *
                               Rational(std::max<std::uint64_t>(1, matrix.size()));
      for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = 0; j < matrix.size(); ++j) {
          if (i != j && matrix.colors[i] == matrix.colors[j]) matrix.dist[i][j] += penalty;
        }
      }
      report_oracle(cost, brute_matching(matrix));
    }
  } else if (problem == "bi-mst") {
    out["n"] = colored.red.size();
    const Rational exact = bi_mst_cost_exact(colored);
    const BoundedCost bounds = bi_mst_theta_bounds(colored);
    out["cost"] = cost_json(exact);
    out["bounds"] = {{"lower", cost_json(bounds.lower)}, {"upper", cost_json(bounds.upper)}};
    if (with_oracle) report_oracle(exact, brute_mst(distance_matrix(colored), true));
  } else if (problem == "bi-tsp") {
    out["n"] = colored.red.size();
    const BoundedCost bounds = bi_tsp_bounds(colored);
    out["bounds"] = {{"lower", cost_json(bounds.lower)}, {"upper", cost_json(bounds.upper)}};
    if (with_oracle) {
      report_oracle_bounds(bounds, brute_tsp(distance_matrix(colored), true));
    }
  } else {
    throw std::invalid_argument("unknown problem: " + problem);
  }

  std::cout << out.dump(2) << "\n";
  return oracle_match ? kExitOk : kExitCheckFailed;
}

std::vector<double> parse_tail_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) grid.push_back(std::stod(token));
  }
  return grid;
}

std::vector<std::uint64_t> parse_sizes(const std::string& text) {
  std::vector<std::uint64_t> sizes;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) sizes.push_back(std::stoull(token));
  }
  return sizes;
}

int run_sweep(ExperimentConfig cfg, const std::string& problem,
              const std::vector<std::uint64_t>& sizes, const std::string& out_prefix) {
  const auto started = std::chrono::system_clock::now();
  const auto rows = scaling_sweep(cfg, sizes);
  json out{{"problem", problem}, {"params", params_json(cfg.params)}, {"seed", cfg.seed}};
  json table = json::array();
  for (const auto& row : rows) {
    table.push_back(json{{"n", row.n},
                         {"mean", row.mean},
                         {"std_error", row.std_error},
                         {"scale", row.scale},
                         {"ratio", row.ratio}});
  }
  out["sweep"] = table;
  std::vector<std::string> outputs;
  if (!out_prefix.empty()) {
    const std::string csv_path = out_prefix + "_sweep.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot write " + csv_path);
    csv << "n,mean,std_error,scale,ratio\n";
    for (const auto& row : rows) {
      csv << row.n << "," << row.mean << "," << row.std_error << "," << row.scale << ","
          << row.ratio << "\n";
    }
    outputs.push_back(csv_path);
    const std::string manifest_path = out_prefix + "_manifest.json";
    json config = out;
    config.erase("sweep");
    config["n_list"] = sizes;
    config["trials"] = cfg.trials;
    std::ofstream manifest_file(manifest_path);
    manifest_file << manifest_json("estimate --sweep", config, cfg.seed,
                                   std::chrono::duration<double>(
                                       std::chrono::system_clock::now() - started)
                                       .count(),
                                   outputs)
                         .dump(2)
                  << "\n";
    outputs.push_back(manifest_path);
  }
  out["outputs"] = outputs;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_estimate(const ModelFlags& model, const std::string& problem, std::uint64_t n,
                 std::uint64_t trials, Seed seed, const std::string& tail_grid_text,
                 bool include_root, unsigned threads, const std::string& sweep_text,
                 const std::string& out_prefix) {
  ExperimentConfig cfg{make_params(model), n,      trials, seed,
                       parse_functional(problem),  include_root, parse_tail_grid(tail_grid_text),
                       threads};
  if (!sweep_text.empty()) return run_sweep(cfg, problem, parse_sizes(sweep_text), out_prefix);
  const auto started = std::chrono::system_clock::now();
  const EstimateReport report = run_experiment(cfg);

  json summary{{"problem", problem},
               {"params", params_json(cfg.params)},
               {"n", n},
               {"trials", report.trials},
               {"seed", seed},
               {"mean", report.mean},
               {"std_error", report.std_error},
               {"median", report.median},
               {"min", report.min},
               {"max", report.max},
               {"wall_time_s", report.wall_time_s}};
  json tail = json::array();
  for (const auto& [t, p] : report.tail) tail.push_back(json::array({t, p}));
  summary["tail"] = tail;

  std::vector<std::string> outputs;
  if (!out_prefix.empty()) {
    const std::string csv_path = out_prefix + "_trials.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot write " + csv_path);
    csv << "trial,value\n";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
      csv << i << "," << report.values[i] << "\n";
    }
    outputs.push_back(csv_path);

    const std::string summary_path = out_prefix + "_summary.json";
    std::ofstream summary_file(summary_path);
    summary_file << summary.dump(2) << "\n";
    outputs.push_back(summary_path);

    const std::string manifest_path = out_prefix + "_manifest.json";
    summary["manifest"] = manifest_path;
    json config = summary;
    config.erase("manifest");
    config.erase("mean");
    config.erase("std_error");
    config.erase("median");
    config.erase("min");
    config.erase("max");
    config.erase("tail");
    config.erase("wall_time_s");
    config["tail_grid"] = cfg.tail_grid;
    config["include_root"] = include_root;
    config["threads"] = threads;
    std::ofstream manifest_file(manifest_path);
    manifest_file << manifest_json("estimate", config, seed,
                                   std::chrono::duration<double>(
                                       std::chrono::system_clock::now() - started)
                                       .count(),
                                   outputs)
                         .dump(2)
                  << "\n";
    outputs.push_back(manifest_path);
  }
  summary["outputs"] = outputs;
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// Coordinates accept rational literals p/q, integers, and plain decimals
// (converted exactly).
Rational parse_coordinate(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  const std::string whole = dot == 0 ? "0" : text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a coordinate: '" + text + "'");
  }
  Rational value = parse_rational(whole.empty() ? "0" : whole);
  if (!frac.empty()) {
    const Rational tail(Int(frac), int_pow(Int(10), frac.size()));
    value += value < 0 ? -tail : tail;
  }
  return value;
}

int run_embed(int dim, std::uint64_t cells, bool check_dom, bool stretch,
              const std::string& points_path, const std::string& out_prefix) {
  const GridSpec spec{dim, cells};
  const GridHst grid = build_grid_hst(spec);

  json out;
  out["d"] = dim;
  out["s"] = cells;
  out["params"] = params_json(grid.params);
  out["diameter"] = cost_json(diameter(grid.params));

  bool ok = true;
  if (check_dom) {
    const auto verdict = check_domination(spec);
    out["domination"] = {{"ok", verdict.ok}, {"pairs_checked", verdict.pairs_checked}};
    if (verdict.violation) {
      out["domination"]["violation"] = {verdict.violation->first, verdict.violation->second};
    }
    ok = ok && verdict.ok;
  }
  std::vector<std::string> outputs;
  if (stretch) {
    const auto table = shifted_family_stretch(spec);
    out["stretch"] = {{"max_expected", cost_json(table.max_expected_stretch)},
                      {"min_shift_ratio", cost_json(table.min_shift_ratio)},
                      {"pairs", table.rows.size()}};
    if (!out_prefix.empty()) {
      const std::string path = out_prefix + "_stretch.csv";
      std::ofstream csv(path);
      if (!csv) throw std::invalid_argument("cannot write " + path);
      csv << "p,q,torus_distance,expected_stretch\n";
      for (const auto& row : table.rows) {
        csv << row.p << "," << row.q << "," << to_fraction_string(row.torus_distance) << ","
            << to_fraction_string(row.expected_stretch) << "\n";
      }
      outputs.push_back(path);
    }
  }
  if (!points_path.empty()) {
    // one coordinate row per point; emit the leaf of each point's cell
    std::ifstream in(points_path);
    if (!in) throw std::invalid_argument("cannot open points file: " + points_path);
    std::vector<std::uint64_t> mapped;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::vector<Rational> point;
      std::stringstream row(line);
      std::string token;
      bool header = false;
      while (std::getline(row, token, ',')) {
        token.erase(0, token.find_first_not_of(" \t\r"));
        token.erase(token.find_last_not_of(" \t\r") + 1);
        if (token.empty()) continue;
        if (token.find_first_not_of("0123456789./-+") != std::string::npos) {
          header = true;
          break;
        }
        point.push_back(parse_coordinate(token));
      }
      if (header || point.empty()) continue;
      mapped.push_back(point_to_leaf(grid, point));
    }
    out["points_mapped"] = mapped.size();
    json leaves = json::array();
    for (std::uint64_t leaf : mapped) leaves.push_back(leaf);
    out["leaves"] = leaves;
    if (!out_prefix.empty()) {
      const std::string path = out_prefix + "_leaves.csv";
      std::ofstream csv(path);
      if (!csv) throw std::invalid_argument("cannot write " + path);
      csv << "leaf_index\n";
      for (std::uint64_t leaf : mapped) csv << leaf << "\n";
      outputs.push_back(path);
    }
  }
  if (!out_prefix.empty()) {
    const std::string path = out_prefix + "_embed.json";
    std::ofstream file(path);
    file << out.dump(2) << "\n";
    outputs.push_back(path);
  }
  out["outputs"] = outputs;
  std::cout << out.dump(2) << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers, Monte Carlo estimation, and grid embeddings on balanced "
               "hierarchically separated trees"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance exactly");
  ModelFlags solve_model;
  add_model_flags(solve, solve_model);
  std::string solve_problem;
  solve->add_option("--problem", solve_problem,
                    "mono-matching|mono-tsp|mono-mst|bi-matching|bi-mst|bi-tsp")
      ->required();
  std::uint64_t solve_n = 0;
  Seed solve_seed = 0;
  std::uint64_t solve_stream = 0;
  std::string solve_instance;
  bool solve_root = false;
  bool solve_oracle = false;
  solve->add_option("--n", solve_n, "sample size (per color for bi-*)");
  solve->add_option("--seed", solve_seed, "sampling seed");
  solve->add_option("--stream", solve_stream, "sampling stream index");
  solve->add_option("--instance", solve_instance, "CSV instance file: leaf_index[,color]");
  solve->add_flag("--include-root", solve_root, "tour through the points and the root");
  solve->add_flag("--oracle", solve_oracle, "cross-check against the brute-force oracle");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimation of a functional");
  ModelFlags est_model;
  add_model_flags(estimate, est_model);
  std::string est_problem;
  estimate->add_option("--problem", est_problem,
                       "mono-matching|mono-tsp|mono-mst|bi-matching|bi-mst|bi-tsp-upper|"
                       "bi-tsp-lower")
      ->required();
  std::uint64_t est_n = 1, est_trials = 1000;
  Seed est_seed = 0;
  std::string est_tail_grid;
  std::string est_sweep;
  std::string est_out;
  bool est_root = false;
  unsigned est_threads = 0;
  estimate->add_option("--n", est_n, "sample size (per color for bi-*)")->required();
  estimate->add_option("--sweep", est_sweep,
                       "comma-separated n values: mean-vs-scale table instead of one estimate");
  estimate->add_option("--trials", est_trials, "number of replications");
  estimate->add_option("--seed", est_seed, "base seed; replication i uses stream i");
  estimate->add_option("--tail-grid", est_tail_grid, "comma-separated deviation thresholds");
  estimate->add_option("--out", est_out, "output path prefix for CSV/JSON files");
  estimate->add_flag("--include-root", est_root, "tour through the points and the root");
  estimate->add_option("--threads", est_threads, "worker threads (0 = hardware)");

  // embed
  auto* embed = app.add_subcommand("embed", "dominating grid tree and torus shift family");
  int embed_d = 1;
  std::uint64_t embed_s = 8;
  bool embed_check = false;
  bool embed_stretch = false;
  std::string embed_points;
  std::string embed_out;
  embed->add_option("--d", embed_d, "dimension")->required();
  embed->add_option("--s", embed_s, "cells per axis (power of two)")->required();
  embed->add_flag("--check-domination", embed_check, "verify tree >= Euclidean on grid pairs");
  embed->add_flag("--stretch", embed_stretch,
                  "exact expected stretch of the shifted torus family (d = 1)");
  embed->add_option("--points", embed_points,
                    "CSV of points in [0,1]^d (one coordinate row per point) to map to leaves");
  embed->add_option("--out", embed_out, "output path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      std::optional<std::string> instance;
      if (!solve_instance.empty()) instance = solve_instance;
      if (!instance && solve_n == 0 && solve_problem != "mono-matching") {
        throw std::invalid_argument("either --instance or --n is required");
      }
      return run_solve(solve_model, solve_problem, instance, solve_n, solve_seed, solve_stream,
                       solve_root, solve_oracle);
    }
    if (estimate->parsed()) {
      return run_estimate(est_model, est_problem, est_n, est_trials, est_seed, est_tail_grid,
                          est_root, est_threads, est_sweep, est_out);
    }
    if (embed->parsed()) {
      return run_embed(embed_d, embed_s, embed_check, embed_stretch, embed_points, embed_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
