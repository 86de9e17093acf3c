#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsd/parallel.hpp"
#include "omsd/rng.hpp"
#include "omsd/strength_distribution.hpp"

namespace omsd {

struct SimulationEstimate {
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t hits_at_init = 0;  // trials whose uniform initial sample was already optimal
};

/// Selection tie-breaking among equally fit offspring. The runtime law is the
/// same for every rule; exposing it lets tests verify that.
enum class TieBreak { first_best, last_best };

struct SimulateOptions {
  std::int64_t generation_cap = 0;  // per trial; 0 resolves to 10^7 * n
  unsigned threads = 0;             // 0 = hardware concurrency
  TieBreak tie_break = TieBreak::first_best;
};

namespace detail {

/// One independent run of the (1+lambda) EA on an explicit bit string.
/// Returns the generation count at which an optimal offspring is first
/// evaluated (0 when initialization already hits the optimum).
inline std::int64_t simulate_trial(int n, std::int64_t lambda, const std::vector<double>& cdf,
                                   Rng& rng, std::int64_t cap, TieBreak tie_break,
                                   std::int64_t trial_index) {
  std::vector<std::uint8_t> parent(static_cast<std::size_t>(n));
  int parent_fitness = 0;
  for (auto& bit : parent) {
    bit = static_cast<std::uint8_t>(rng.below(2));
    parent_fitness += bit;
  }
  if (parent_fitness == n) return 0;

  std::vector<int> positions(static_cast<std::size_t>(n));
  std::iota(positions.begin(), positions.end(), 0);
  std::vector<std::uint8_t> offspring(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> best(static_cast<std::size_t>(n));

  for (std::int64_t t = 1; t <= cap; ++t) {
    int best_fitness = -1;
    for (std::int64_t i = 0; i < lambda; ++i) {
      // Inverse-CDF strength draw, then a partial Fisher-Yates pass to pick
      // that many distinct positions uniformly.
      const double u = rng.uniform01();
      const int strength = static_cast<int>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      offspring = parent;
      int fitness = parent_fitness;
      for (int s = 0; s < strength; ++s) {
        const int swap_with = s + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - s)));
        std::swap(positions[static_cast<std::size_t>(s)],
                  positions[static_cast<std::size_t>(swap_with)]);
        auto& bit = offspring[static_cast<std::size_t>(positions[static_cast<std::size_t>(s)])];
        fitness += bit ? -1 : 1;
        bit ^= 1u;
      }
      const bool take = tie_break == TieBreak::first_best ? fitness > best_fitness
                                                          : fitness >= best_fitness;
      if (take) {
        best_fitness = fitness;
        std::swap(best, offspring);
      }
    }
    if (best_fitness == n) return t;
    if (best_fitness >= parent_fitness) {
      std::swap(parent, best);
      parent_fitness = best_fitness;
    }
  }
  throw std::runtime_error("simulate_runtime: trial " + std::to_string(trial_index) +
                           " exceeded the generation cap of " + std::to_string(cap));
}

}  // namespace detail

/// Monte Carlo estimate of the expected runtime: runs `trials` independent
/// executions of the algorithm on explicit bit strings and reports the sample
/// mean with its standard error. Trials draw from counter-derived RNG streams
/// keyed on (seed, trial), so results do not depend on thread scheduling.
inline SimulationEstimate simulate_runtime(int n, std::int64_t lambda,
                                           const StrengthDistribution& d, std::int64_t trials,
                                           std::uint64_t seed, const SimulateOptions& options = {}) {
  if (n < 1 || lambda < 1)
    throw std::invalid_argument("simulate_runtime: require n >= 1 and lambda >= 1");
  if (trials < 1) throw std::invalid_argument("simulate_runtime: trials must be >= 1");
  if (d.n != n) throw std::invalid_argument("simulate_runtime: distribution dimension mismatch");
  d.validate();
  const std::int64_t cap =
      options.generation_cap > 0 ? options.generation_cap : 10'000'000LL * n;

  std::vector<double> cdf(d.weights.size());
  std::partial_sum(d.weights.begin(), d.weights.end(), cdf.begin());
  cdf.back() = std::max(cdf.back(), 1.0);  // guard the u ~ 1 edge

  std::vector<double> generations(static_cast<std::size_t>(trials));
  parallel_for(trials, options.threads, [&](std::int64_t trial) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(trial)}));
    generations[static_cast<std::size_t>(trial)] = static_cast<double>(
        detail::simulate_trial(n, lambda, cdf, rng, cap, options.tie_break, trial));
  });

  SimulationEstimate est;
  est.trials = trials;
  std::int64_t hits = 0;
  double sum = 0.0;
  for (double g : generations) {
    sum += g;
    if (g == 0.0) ++hits;
  }
  est.hits_at_init = hits;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double g : generations) ss += (g - est.mean) * (g - est.mean);
    est.std_error = std::sqrt(ss / static_cast<double>(trials - 1)) /
                    std::sqrt(static_cast<double>(trials));
  }
  return est;
}

}  // namespace omsd
