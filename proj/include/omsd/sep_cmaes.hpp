#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "omsd/dp.hpp"
#include "omsd/rng.hpp"
#include "omsd/strength_distribution.hpp"

namespace omsd {

struct CmaConfig {
  int population_size = 10;
  double initial_step = 1.0;
  std::int64_t budget = 0;  // evaluation cap; 0 resolves to 100 n^2 in optimize()
  std::uint64_t seed = 0;
  double tol_fun = 1e-15;    // relative flat-fitness tolerance
  double tol_x = 1e-14;      // minimal mean movement per coordinate
  double tol_sigma = 1e-14;  // minimal overall step scale
};

enum class Termination { flat_fitness, tiny_step, tiny_move, budget };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::flat_fitness: return "flat_fitness";
    case Termination::tiny_step: return "tiny_step";
    case Termination::tiny_move: return "tiny_move";
    case Termination::budget: return "budget";
  }
  return "?";
}

inline Termination termination_from_string(std::string_view s) {
  if (s == "flat_fitness") return Termination::flat_fitness;
  if (s == "tiny_step") return Termination::tiny_step;
  if (s == "tiny_move") return Termination::tiny_move;
  if (s == "budget") return Termination::budget;
  throw std::invalid_argument("unknown termination reason: " + std::string(s));
}

/// Internal optimizer state: sampling distribution N(mean, sigma^2 diag(var))
/// plus the two evolution paths and counters.
struct CmaState {
  std::vector<double> mean;
  std::vector<double> diag_var;
  std::vector<double> path_sigma;
  std::vector<double> path_c;
  double sigma = 1.0;
  std::int64_t generation = 0;
  std::int64_t evals = 0;
};

/// Result of one optimizer run on the runtime objective. best_runtime is
/// re-evaluated from best_distribution through the dynamic program when the
/// record is produced.
struct OptimizationRun {
  int n = 0;
  std::int64_t lambda = 1;
  std::uint64_t seed = 0;
  std::vector<double> best_genotype;
  StrengthDistribution best_distribution;
  double best_runtime = std::numeric_limits<double>::infinity();
  std::int64_t evals_used = 0;
  Termination termination = Termination::budget;
};

/// Maps a raw genotype to a strength distribution: coordinates are clamped to
/// the unit box and normalized to sum 1 over strengths 1..n; strength 0 keeps
/// weight 0 (the search space excludes it). The genotype itself is left
/// untouched. Returns nullopt when the clamped vector has zero sum; the
/// objective maps that to a finite penalty.
inline std::optional<StrengthDistribution> normalize_candidate(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw std::invalid_argument("normalize_candidate: empty genotype");
  std::vector<double> clamped(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    clamped[i] = std::clamp(x[i], 0.0, 1.0);
    sum += clamped[i];
  }
  if (sum <= 0.0) return std::nullopt;
  StrengthDistribution d;
  d.n = n;
  d.weights.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) d.weights[static_cast<std::size_t>(k)] = clamped[k - 1] / sum;
  return d;
}

/// Finite stand-in fitness for degenerate or infinite-runtime candidates.
/// Far above any finite optimum at tested scales, yet safe inside the
/// optimizer's weighted means.
inline double degenerate_penalty(int n) {
  return std::min(10.0 * static_cast<double>(n) * std::exp2(static_cast<double>(n)), 1e300);
}

namespace sepcma {

/// Fills `out[i]` with the objective value of candidate `xs[i]`.
using BatchObjective =
    std::function<void(const std::vector<std::vector<double>>& xs, std::span<double> out)>;

struct Result {
  std::vector<double> best_x;
  double best_f = std::numeric_limits<double>::infinity();
  std::int64_t evals = 0;
  Termination reason = Termination::budget;
  CmaState state;
  std::vector<double> best_history;  // best-so-far after each generation
};

/// Separable CMA-ES: the usual rank-one and rank-mu updates restricted to a
/// diagonal covariance, with learning rates enlarged by (dim + 2) / 3 as the
/// separable variant prescribes. Minimizes the batch objective from a uniform
/// random mean in the unit box. Deterministic given the Rng state.
inline Result minimize(int dim, const CmaConfig& config, std::int64_t budget, Rng& rng,
                       const BatchObjective& objective) {
  if (dim < 1) throw std::invalid_argument("sep-CMA-ES: dimension must be >= 1");
  if (config.population_size < 4)
    throw std::invalid_argument("sep-CMA-ES: population size must be >= 4");
  if (budget < config.population_size)
    throw std::invalid_argument("sep-CMA-ES: budget below one generation");
  if (!(config.tol_fun > 0.0 && config.tol_x > 0.0 && config.tol_sigma > 0.0))
    throw std::invalid_argument("sep-CMA-ES: tolerances must be positive");
  if (!(config.initial_step > 0.0))
    throw std::invalid_argument("sep-CMA-ES: initial step must be positive");

  const int pop = config.population_size;
  const int mu = pop / 2;
  const double d = static_cast<double>(dim);

  // Log-linear recombination weights over the better half.
  std::vector<double> weights(static_cast<std::size_t>(mu));
  for (int r = 0; r < mu; ++r)
    weights[static_cast<std::size_t>(r)] =
        std::log((pop + 1) / 2.0) - std::log(static_cast<double>(r) + 1.0);
  const double w_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  double w_sq = 0.0;
  for (double& w : weights) {
    w /= w_sum;
    w_sq += w * w;
  }
  const double mu_eff = 1.0 / w_sq;

  const double c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0);
  const double d_sigma =
      1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + c_sigma;
  const double c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d);
  const double sep_scale = (d + 2.0) / 3.0;
  double c_1 = sep_scale * 2.0 / ((d + 1.3) * (d + 1.3) + mu_eff);
  double c_mu = sep_scale * 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) * (d + 2.0) + mu_eff);
  c_1 = std::min(c_1, 1.0);
  c_mu = std::min(c_mu, 1.0 - c_1);
  const double chi_n = std::sqrt(d) * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d));

  CmaState st;
  st.mean.resize(static_cast<std::size_t>(dim));
  for (double& m : st.mean) m = rng.uniform01();
  st.diag_var.assign(static_cast<std::size_t>(dim), 1.0);
  st.path_sigma.assign(static_cast<std::size_t>(dim), 0.0);
  st.path_c.assign(static_cast<std::size_t>(dim), 0.0);
  st.sigma = config.initial_step;

  Result res;
  const std::int64_t flat_window =
      10 + static_cast<std::int64_t>(std::ceil(30.0 * d / static_cast<double>(pop)));
  std::int64_t flat_run = 0;

  std::vector<std::vector<double>> xs(static_cast<std::size_t>(pop),
                                      std::vector<double>(static_cast<std::size_t>(dim)));
  std::vector<double> fs(static_cast<std::size_t>(pop));
  std::vector<int> order(static_cast<std::size_t>(pop));
  std::vector<double> new_mean(static_cast<std::size_t>(dim));

  for (;;) {
    if (st.evals + pop > budget) {
      res.reason = Termination::budget;
      break;
    }

    for (int i = 0; i < pop; ++i)
      for (int j = 0; j < dim; ++j)
        xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            st.mean[static_cast<std::size_t>(j)] +
            st.sigma * std::sqrt(st.diag_var[static_cast<std::size_t>(j)]) * rng.normal();

    objective(xs, fs);
    st.evals += pop;
    st.generation += 1;

    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)];
    });
    const double f_best = fs[static_cast<std::size_t>(order.front())];
    const double f_worst = fs[static_cast<std::size_t>(order.back())];
    if (f_best < res.best_f) {
      res.best_f = f_best;
      res.best_x = xs[static_cast<std::size_t>(order.front())];
    }
    res.best_history.push_back(res.best_f);

    const bool uniformly_flat =
        (f_worst - f_best) < config.tol_fun * (1.0 + std::fabs(f_best));
    flat_run = uniformly_flat ? flat_run + 1 : 0;

    // Mean update over the mu best, then path and diagonal-covariance updates.
    std::fill(new_mean.begin(), new_mean.end(), 0.0);
    for (int r = 0; r < mu; ++r) {
      const auto& xr = xs[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
      const double w = weights[static_cast<std::size_t>(r)];
      for (int j = 0; j < dim; ++j)
        new_mean[static_cast<std::size_t>(j)] += w * xr[static_cast<std::size_t>(j)];
    }

    double ps_norm_sq = 0.0;
    const double cs_in = std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff);
    for (int j = 0; j < dim; ++j) {
      const double y = (new_mean[static_cast<std::size_t>(j)] -
                        st.mean[static_cast<std::size_t>(j)]) /
                       st.sigma;
      double& ps = st.path_sigma[static_cast<std::size_t>(j)];
      ps = (1.0 - c_sigma) * ps +
           cs_in * y / std::sqrt(st.diag_var[static_cast<std::size_t>(j)]);
      ps_norm_sq += ps * ps;
    }
    const double ps_norm = std::sqrt(ps_norm_sq);
    const double expected_decay =
        std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * static_cast<double>(st.generation)));
    const bool h_sigma = ps_norm / expected_decay / chi_n < 1.4 + 2.0 / (d + 1.0);
    const double cc_in = std::sqrt(c_c * (2.0 - c_c) * mu_eff);
    const double var_loss = (1.0 - (h_sigma ? 1.0 : 0.0)) * c_c * (2.0 - c_c);

    for (int j = 0; j < dim; ++j) {
      const double y = (new_mean[static_cast<std::size_t>(j)] -
                        st.mean[static_cast<std::size_t>(j)]) /
                       st.sigma;
      double& pc = st.path_c[static_cast<std::size_t>(j)];
      pc = (1.0 - c_c) * pc + (h_sigma ? cc_in * y : 0.0);
      double rank_mu = 0.0;
      for (int r = 0; r < mu; ++r) {
        const double step =
            (xs[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])]
               [static_cast<std::size_t>(j)] -
             st.mean[static_cast<std::size_t>(j)]) /
            st.sigma;
        rank_mu += weights[static_cast<std::size_t>(r)] * step * step;
      }
      double& var = st.diag_var[static_cast<std::size_t>(j)];
      var = (1.0 - c_1 - c_mu) * var + c_1 * (pc * pc + var_loss * var) + c_mu * rank_mu;
      var = std::max(var, 1e-300);
    }

    st.sigma *= std::exp((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0));

    double max_move = 0.0;
    double max_scale = 0.0;
    for (int j = 0; j < dim; ++j) {
      max_move = std::max(max_move, std::fabs(new_mean[static_cast<std::size_t>(j)] -
                                              st.mean[static_cast<std::size_t>(j)]));
      max_scale = std::max(max_scale, std::sqrt(st.diag_var[static_cast<std::size_t>(j)]));
      st.mean[static_cast<std::size_t>(j)] = new_mean[static_cast<std::size_t>(j)];
    }

    if (flat_run >= flat_window) {
      res.reason = Termination::flat_fitness;
      break;
    }
    if (st.sigma * max_scale < config.tol_sigma) {
      res.reason = Termination::tiny_step;
      break;
    }
    if (max_move < config.tol_x) {
      res.reason = Termination::tiny_move;
      break;
    }
  }

  res.evals = st.evals;
  res.state = std::move(st);
  return res;
}

}  // namespace sepcma

/// Searches the simplex of strength distributions for the one minimizing the
/// expected runtime at (n, lambda). Every generation is evaluated through the
/// shared-kernel batch evaluator after clamp-and-normalize; degenerate and
/// infinite-runtime candidates receive the finite penalty and can never become
/// best-ever. Deterministic given config.seed.
inline OptimizationRun optimize(int n, std::int64_t lambda, const CmaConfig& config) {
  if (n < 1 || lambda < 1) throw std::invalid_argument("optimize: require n >= 1 and lambda >= 1");
  const std::int64_t budget =
      config.budget > 0 ? config.budget
                        : 100 * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
  Rng rng(config.seed);
  const double penalty = degenerate_penalty(n);

  std::vector<StrengthDistribution> candidates;
  std::vector<std::size_t> slots;
  const sepcma::BatchObjective objective = [&](const std::vector<std::vector<double>>& xs,
                                               std::span<double> out) {
    candidates.clear();
    slots.clear();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (auto d = normalize_candidate(xs[i])) {
        candidates.push_back(std::move(*d));
        slots.push_back(i);
      } else {
        out[i] = penalty;
      }
    }
    if (candidates.empty()) return;
    const std::vector<double> values = batch_expected_runtime(n, lambda, candidates);
    // Box handling as in repair-and-penalize constrained CMA-ES: the runtime
    // of the clamped phenotype plus a distance-to-box term on the scale of
    // the current population's fitness range. Without it, coordinates outside
    // the box carry no signal at all and the search develops dead directions.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double scale = std::isfinite(lo) ? (hi - lo) + 1e-8 * (1.0 + std::fabs(lo)) : 1.0;
    for (std::size_t c = 0; c < slots.size(); ++c) {
      if (!std::isfinite(values[c])) {
        out[slots[c]] = penalty;
        continue;
      }
      double outside = 0.0;
      for (double xj : xs[slots[c]]) outside += std::fabs(xj - std::clamp(xj, 0.0, 1.0));
      out[slots[c]] = values[c] + outside * scale;
    }
  };

  const sepcma::Result res = sepcma::minimize(n, config, budget, rng, objective);

  auto best = normalize_candidate(res.best_x);
  if (!best || res.best_f >= penalty)
    throw std::runtime_error("optimize: no feasible candidate was ever evaluated");

  OptimizationRun run;
  run.n = n;
  run.lambda = lambda;
  run.seed = config.seed;
  run.best_genotype = res.best_x;
  run.best_distribution = std::move(*best);
  run.best_runtime = expected_runtime(n, lambda, run.best_distribution);
  run.evals_used = res.evals;
  run.termination = res.reason;
  return run;
}

}  // namespace omsd
