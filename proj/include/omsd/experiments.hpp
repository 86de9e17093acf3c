#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "omsd/dp.hpp"
#include "omsd/operators.hpp"
#include "omsd/parallel.hpp"
#include "omsd/rng.hpp"
#include "omsd/sep_cmaes.hpp"

namespace omsd {

/// A run counts as "good" when its runtime exceeds the cell minimum by a
/// factor of at most this; per-strength statistics use good runs only.
inline constexpr double kGoodRunFactor = 1e-9;

struct GridSpec {
  std::vector<int> ns;
  std::vector<std::int64_t> lambdas;
  int runs_per_cell = 50;
  std::uint64_t base_seed = 0;
};

/// Aggregate of all optimizer runs for one (n, lambda) cell.
struct CellResult {
  int n = 0;
  std::int64_t lambda = 1;
  std::uint64_t base_seed = 0;
  std::vector<OptimizationRun> runs;
  double best_runtime = std::numeric_limits<double>::infinity();
  std::vector<int> good_runs;
  std::vector<double> per_k_mean;  // index 0 corresponds to strength 1
  std::vector<double> per_k_std;
  double max_std = 0.0;
};

struct RegretRecord {
  int n = 0;
  std::int64_t lambda = 1;
  BaselineSpec baseline;
  double baseline_runtime = 0.0;
  double optimal_runtime = 0.0;
  double regret = 0.0;  // baseline_runtime / optimal_runtime
};

inline std::uint64_t run_seed(std::uint64_t base_seed, int n, std::int64_t lambda, int run_index) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(lambda),
                                 static_cast<std::uint64_t>(run_index)});
}

namespace detail {

inline void aggregate_cell(CellResult& cell) {
  cell.best_runtime = std::numeric_limits<double>::infinity();
  for (const auto& run : cell.runs) cell.best_runtime = std::min(cell.best_runtime, run.best_runtime);
  cell.good_runs.clear();
  for (std::size_t i = 0; i < cell.runs.size(); ++i)
    if (cell.runs[i].best_runtime <= cell.best_runtime * (1.0 + kGoodRunFactor))
      cell.good_runs.push_back(static_cast<int>(i));

  const std::size_t dim = static_cast<std::size_t>(cell.n);
  cell.per_k_mean.assign(dim, 0.0);
  cell.per_k_std.assign(dim, 0.0);
  const double count = static_cast<double>(cell.good_runs.size());
  for (int idx : cell.good_runs) {
    const auto& w = cell.runs[static_cast<std::size_t>(idx)].best_distribution.weights;
    for (std::size_t k = 1; k <= dim; ++k) cell.per_k_mean[k - 1] += w[k] / count;
  }
  for (int idx : cell.good_runs) {
    const auto& w = cell.runs[static_cast<std::size_t>(idx)].best_distribution.weights;
    for (std::size_t k = 1; k <= dim; ++k) {
      const double dev = w[k] - cell.per_k_mean[k - 1];
      cell.per_k_std[k - 1] += dev * dev / count;
    }
  }
  cell.max_std = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    cell.per_k_std[k] = std::sqrt(cell.per_k_std[k]);
    cell.max_std = std::max(cell.max_std, cell.per_k_std[k]);
  }
}

}  // namespace detail

/// Runs `runs` independent optimizer instances for one cell, seeds derived
/// from (base_seed, n, lambda, run index). Runs execute in parallel; the
/// aggregation is a deterministic fold in run order.
inline CellResult run_cell(int n, std::int64_t lambda, int runs, std::uint64_t base_seed,
                           const CmaConfig& config_template, unsigned threads = 0) {
  if (runs < 1) throw std::invalid_argument("run_cell: runs must be >= 1");
  CellResult cell;
  cell.n = n;
  cell.lambda = lambda;
  cell.base_seed = base_seed;
  cell.runs.resize(static_cast<std::size_t>(runs));
  parallel_for(runs, threads, [&](std::int64_t i) {
    CmaConfig config = config_template;
    config.seed = run_seed(base_seed, n, lambda, static_cast<int>(i));
    cell.runs[static_cast<std::size_t>(i)] = optimize(n, lambda, config);
  });
  detail::aggregate_cell(cell);
  return cell;
}

/// Full experimental grid; cells are ordered by (n, lambda) as given.
inline std::vector<CellResult> run_grid(const GridSpec& grid, const CmaConfig& config_template,
                                        unsigned threads = 0) {
  if (grid.ns.empty() || grid.lambdas.empty())
    throw std::invalid_argument("run_grid: grid must name at least one n and one lambda");
  if (grid.runs_per_cell < 1) throw std::invalid_argument("run_grid: runs_per_cell must be >= 1");
  std::vector<CellResult> cells;
  cells.reserve(grid.ns.size() * grid.lambdas.size());
  for (int n : grid.ns)
    for (std::int64_t lambda : grid.lambdas)
      cells.push_back(run_cell(n, lambda, grid.runs_per_cell, grid.base_seed, config_template,
                               threads));
  return cells;
}

/// Number of strengths k >= 1 whose probability exceeds the threshold.
inline int count_support(std::span<const double> k_weights, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("count_support: threshold must be > 0");
  int count = 0;
  for (double w : k_weights)
    if (w > threshold) ++count;
  return count;
}

inline int count_support(const StrengthDistribution& d, double threshold) {
  d.validate();
  return count_support(std::span<const double>(d.weights).subspan(1), threshold);
}

/// Evaluates each baseline exactly at every lambda and records the runtime
/// ratio against the supplied optimal runtimes (one per lambda, same order).
inline std::vector<RegretRecord> compare_baselines(int n, std::span<const std::int64_t> lambdas,
                                                   std::span<const BaselineSpec> specs,
                                                   std::span<const double> optimal) {
  if (optimal.size() != lambdas.size())
    throw std::invalid_argument("compare_baselines: need one optimal runtime per lambda");
  std::vector<RegretRecord> records;
  records.reserve(lambdas.size() * specs.size());
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    for (const auto& spec : specs) {
      RegretRecord rec;
      rec.n = n;
      rec.lambda = lambdas[li];
      rec.baseline = spec;
      rec.baseline_runtime = expected_runtime(n, rec.lambda, make_baseline(spec, n));
      rec.optimal_runtime = optimal[li];
      rec.regret = rec.baseline_runtime / rec.optimal_runtime;
      records.push_back(rec);
    }
  }
  return records;
}

}  // namespace omsd
