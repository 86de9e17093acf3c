// Command-line front end: exact runtime evaluation, optimal-distribution
// search, Monte Carlo validation, experiment grids, and baseline comparisons.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omsd/omsd.hpp"

namespace fs = std::filesystem;

namespace {

struct DistArgs {
  std::string spec;
  std::string file;
};

// Console display: 15 significant digits, enough for every stated tolerance
// without echoing floating-point noise. Files keep full 17-digit precision.
std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::string(buf);
}

omsd::StrengthDistribution resolve_distribution(const DistArgs& args, int n) {
  if (!args.file.empty()) {
    auto d = omsd::load_distribution_file(args.file);
    if (d.n != n)
      throw std::invalid_argument("distribution file is for n=" + std::to_string(d.n) +
                                  ", requested n=" + std::to_string(n));
    return d;
  }
  if (args.spec.empty()) throw std::invalid_argument("need --dist or --dist-file");
  return omsd::make_baseline(omsd::BaselineSpec::parse(args.spec), n);
}

void add_dist_options(CLI::App* cmd, DistArgs& args) {
  auto* spec = cmd->add_option("--dist", args.spec,
                               "operator spec: rls | onepoint:k | sbm:p | sbm>0:p | sbm0to1:p | "
                               "fastga:beta | pow:beta | binpos:p (p may be 'auto' = 1/n)");
  auto* file = cmd->add_option("--dist-file", args.file, "JSON file {\"n\":..,\"weights\":[..]}");
  spec->excludes(file);
}

std::vector<omsd::BaselineSpec> parse_baselines(const std::vector<std::string>& texts) {
  std::vector<omsd::BaselineSpec> specs;
  specs.reserve(texts.size());
  for (const auto& t : texts) specs.push_back(omsd::BaselineSpec::parse(t));
  return specs;
}

const std::vector<std::string> kDefaultBaselines = {
    "rls",        "sbm:auto",   "sbm>0:auto", "sbm0to1:auto", "fastga:1.3",
    "fastga:1.5", "fastga:1.7", "pow:1.3",    "pow:1.5",      "pow:1.7"};

int run(int argc, char** argv) {
  CLI::App app{"Optimal static mutation-strength distributions for (1+lambda) EAs on OneMax"};
  app.require_subcommand(1);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "exact expected runtime of a distribution");
  int eval_n = 0;
  std::int64_t eval_lambda = 1;
  DistArgs eval_dist;
  std::string eval_format = "text";
  evaluate->add_option("--n", eval_n, "problem dimension")->required();
  evaluate->add_option("--lambda", eval_lambda, "offspring population size")->required();
  add_dist_options(evaluate, eval_dist);
  evaluate->add_option("--format", eval_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // optimize
  auto* optimize = app.add_subcommand("optimize", "search for an optimal distribution");
  int opt_n = 0;
  std::int64_t opt_lambda = 1;
  int opt_runs = 1;
  std::uint64_t opt_seed = 0;
  std::string opt_out;
  omsd::CmaConfig opt_config;
  unsigned opt_threads = 0;
  optimize->add_option("--n", opt_n)->required();
  optimize->add_option("--lambda", opt_lambda)->required();
  optimize->add_option("--runs", opt_runs, "independent optimizer runs (best is kept)");
  optimize->add_option("--seed", opt_seed, "base seed; per-run seeds derive from it");
  optimize->add_option("--out", opt_out, "write the best run as JSON (doubles as a dist file)");
  optimize->add_option("--budget", opt_config.budget, "evaluation cap (default 100 n^2)");
  optimize->add_option("--popsize", opt_config.population_size, "optimizer population size");
  optimize->add_option("--sigma0", opt_config.initial_step, "initial step size");
  optimize->add_option("--threads", opt_threads, "worker cap (0 = all cores)");

  // grid
  auto* grid = app.add_subcommand("grid", "run the full experimental grid");
  std::vector<int> grid_ns;
  std::vector<std::int64_t> grid_lambdas;
  int grid_runs = 50;
  std::uint64_t grid_seed = 0;
  std::string grid_out;
  double grid_threshold = 1e-4;
  omsd::CmaConfig grid_config;
  unsigned grid_threads = 0;
  grid->add_option("--ns", grid_ns, "dimensions, comma separated")->required()->delimiter(',');
  grid->add_option("--lambdas", grid_lambdas, "population sizes, comma separated")
      ->required()
      ->delimiter(',');
  grid->add_option("--runs", grid_runs, "optimizer runs per cell");
  grid->add_option("--seed", grid_seed, "base seed");
  grid->add_option("--out", grid_out, "output directory")->required();
  grid->add_option("--threshold", grid_threshold, "support-count threshold for support.csv");
  grid->add_option("--budget", grid_config.budget);
  grid->add_option("--popsize", grid_config.population_size);
  grid->add_option("--sigma0", grid_config.initial_step);
  grid->add_option("--threads", grid_threads);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runtime estimate");
  int sim_n = 0;
  std::int64_t sim_lambda = 1;
  DistArgs sim_dist;
  std::int64_t sim_trials = 100000;
  std::uint64_t sim_seed = 0;
  std::int64_t sim_cap = 0;
  unsigned sim_threads = 0;
  std::string sim_format = "text";
  simulate->add_option("--n", sim_n)->required();
  simulate->add_option("--lambda", sim_lambda)->required();
  add_dist_options(simulate, sim_dist);
  simulate->add_option("--trials", sim_trials, "independent trials");
  simulate->add_option("--seed", sim_seed);
  simulate->add_option("--cap", sim_cap, "per-trial generation cap (default 10^7 n)");
  simulate->add_option("--threads", sim_threads);
  simulate->add_option("--format", sim_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // compare
  auto* compare = app.add_subcommand("compare", "baseline regrets against optimal runtimes");
  int cmp_n = 0;
  std::vector<std::int64_t> cmp_lambdas;
  std::vector<std::string> cmp_baselines = kDefaultBaselines;
  std::string cmp_optimal = "grid";
  std::string cmp_out;
  int cmp_runs = 10;
  std::uint64_t cmp_seed = 0;
  omsd::CmaConfig cmp_config;
  unsigned cmp_threads = 0;
  std::string cmp_format = "csv";
  compare->add_option("--n", cmp_n)->required();
  compare->add_option("--lambdas", cmp_lambdas)->required()->delimiter(',');
  compare->add_option("--baselines", cmp_baselines, "operator specs, comma separated")
      ->delimiter(',');
  compare->add_option("--optimal", cmp_optimal, "grid = run the optimizer, paper = published table")
      ->check(CLI::IsMember({"grid", "paper"}));
  compare->add_option("--out", cmp_out, "write regret.csv here");
  compare->add_option("--runs", cmp_runs, "optimizer runs per lambda (grid mode)");
  compare->add_option("--seed", cmp_seed);
  compare->add_option("--threads", cmp_threads);
  compare->add_option("--budget", cmp_config.budget);
  compare->add_option("--popsize", cmp_config.population_size);
  compare->add_option("--format", cmp_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  // support
  auto* support = app.add_subcommand("support", "count strengths above a probability threshold");
  std::string sup_cell;
  double sup_threshold = 1e-4;
  support->add_option("--cell", sup_cell, "cell JSON produced by `grid`")->required();
  support->add_option("--threshold", sup_threshold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message to stderr
    return 2;
  }

  if (evaluate->parsed()) {
    const auto d = resolve_distribution(eval_dist, eval_n);
    const double runtime = omsd::expected_runtime(eval_n, eval_lambda, d);
    if (eval_format == "json") {
      omsd::json doc;
      doc["n"] = eval_n;
      doc["lambda"] = eval_lambda;
      doc["runtime"] = runtime;
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << format_value(runtime) << "\n";
    }
    return 0;
  }

  if (optimize->parsed()) {
    std::cout << "seed " << opt_seed << "\n";
    const auto cell =
        omsd::run_cell(opt_n, opt_lambda, opt_runs, opt_seed, opt_config, opt_threads);
    const auto& best = *std::min_element(
        cell.runs.begin(), cell.runs.end(),
        [](const auto& a, const auto& b) { return a.best_runtime < b.best_runtime; });
    std::cout << "best_runtime " << format_value(best.best_runtime) << "\n"
              << "termination " << omsd::to_string(best.termination) << "\n"
              << "evals " << best.evals_used << "\n";
    if (!opt_out.empty()) omsd::write_json_file(opt_out, omsd::run_to_json(best));
    return 0;
  }

  if (grid->parsed()) {
    std::cout << "seed " << grid_seed << "\n";
    fs::create_directories(grid_out);
    omsd::GridSpec spec{grid_ns, grid_lambdas, grid_runs, grid_seed};
    const auto cells = omsd::run_grid(spec, grid_config, grid_threads);
    for (const auto& cell : cells) {
      const fs::path path = fs::path(grid_out) / ("cell_n" + std::to_string(cell.n) + "_lambda" +
                                                  std::to_string(cell.lambda) + ".json");
      omsd::write_json_file(path, omsd::cell_to_json(cell));
    }
    omsd::write_text_file(fs::path(grid_out) / "runtimes.csv", omsd::runtimes_csv(cells));
    omsd::write_text_file(fs::path(grid_out) / "support.csv",
                          omsd::support_csv(cells, grid_threshold));
    std::cout << "cells " << cells.size() << "\n";
    return 0;
  }

  if (simulate->parsed()) {
    const auto d = resolve_distribution(sim_dist, sim_n);
    omsd::SimulateOptions options;
    options.generation_cap = sim_cap;
    options.threads = sim_threads;
    const auto est = omsd::simulate_runtime(sim_n, sim_lambda, d, sim_trials, sim_seed, options);
    if (sim_format == "json") {
      omsd::json doc;
      doc["seed"] = sim_seed;
      doc["trials"] = est.trials;
      doc["mean"] = est.mean;
      doc["std_error"] = est.std_error;
      doc["hits_at_init"] = est.hits_at_init;
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "seed " << sim_seed << "\n"
                << "trials " << est.trials << "\n"
                << "mean " << format_value(est.mean) << "\n"
                << "std_error " << format_value(est.std_error) << "\n"
                << "hits_at_init " << est.hits_at_init << "\n";
    }
    return 0;
  }

  if (compare->parsed()) {
    const auto specs = parse_baselines(cmp_baselines);
    std::vector<double> optimal(cmp_lambdas.size());
    if (cmp_optimal == "paper") {
      for (std::size_t i = 0; i < cmp_lambdas.size(); ++i) {
        const auto value = omsd::reference_runtime(cmp_n, cmp_lambdas[i]);
        if (!value)
          throw std::invalid_argument("no published runtime for n=" + std::to_string(cmp_n) +
                                      ", lambda=" + std::to_string(cmp_lambdas[i]));
        optimal[i] = *value;
      }
    } else {
      std::cout << "seed " << cmp_seed << "\n";
      for (std::size_t i = 0; i < cmp_lambdas.size(); ++i)
        optimal[i] = omsd::run_cell(cmp_n, cmp_lambdas[i], cmp_runs, cmp_seed, cmp_config,
                                    cmp_threads)
                         .best_runtime;
    }
    const auto records = omsd::compare_baselines(cmp_n, cmp_lambdas, specs, optimal);
    std::string payload;
    if (cmp_format == "json") {
      omsd::json docs = omsd::json::array();
      for (const auto& rec : records) {
        omsd::json doc;
        doc["n"] = rec.n;
        doc["lambda"] = rec.lambda;
        doc["baseline"] = rec.baseline.to_string();
        doc["runtime"] = rec.baseline_runtime;
        doc["optimal_runtime"] = rec.optimal_runtime;
        doc["regret"] = rec.regret;
        docs.push_back(std::move(doc));
      }
      payload = docs.dump(2) + "\n";
    } else {
      payload = omsd::regret_csv(records);
    }
    if (cmp_out.empty())
      std::cout << payload;
    else
      omsd::write_text_file(cmp_out, payload);
    return 0;
  }

  if (support->parsed()) {
    const auto cell = omsd::cell_from_json(omsd::load_json_file(sup_cell));
    std::cout << omsd::count_support(cell.per_k_mean, sup_threshold) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
