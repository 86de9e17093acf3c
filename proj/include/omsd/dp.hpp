#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "omsd/math.hpp"
#include "omsd/strength_distribution.hpp"
#include "omsd/transition_kernel.hpp"

namespace omsd {

/// Probabilities over the fitness levels g = f..n (q[0] corresponds to g = f).
/// Produced either for a single offspring or for the best of a generation.
struct LevelDistribution {
  int n = 0;
  int f = 0;
  std::vector<double> q;

  double at(int g) const { return q[static_cast<std::size_t>(g - f)]; }
};

/// Expected remaining generations per starting fitness, plus the expected
/// runtime under uniform random initialization. Entries may be +infinity when
/// the optimum is unreachable from a level.
struct RuntimeProfile {
  int n = 0;
  std::int64_t lambda = 1;
  std::vector<double> t;  // size n + 1, t[n] = 0
  double expected = 0.0;
};

/// One-offspring fitness distribution: improving levels take
/// q(g) = sum_k weights[k] s(k, g); everything non-improving (including
/// strength 0) collapses into q(f) because the algorithm is elitist.
inline LevelDistribution offspring_distribution(const TransitionKernel& kernel,
                                                const StrengthDistribution& d) {
  if (kernel.n != d.n) throw std::invalid_argument("offspring_distribution: dimension mismatch");
  const int n = kernel.n;
  const int f = kernel.f;
  LevelDistribution out;
  out.n = n;
  out.f = f;
  out.q.assign(static_cast<std::size_t>(n - f) + 1, 0.0);
  const std::size_t stride = static_cast<std::size_t>(n) + 1;
  for (int k = 1; k <= n; ++k) {
    const double w = d.weights[static_cast<std::size_t>(k)];
    if (w == 0.0) continue;
    const double* row = kernel.s.data() + static_cast<std::size_t>(k) * stride;
    for (int g = f + 1; g <= n; ++g)
      out.q[static_cast<std::size_t>(g - f)] += w * row[static_cast<std::size_t>(g)];
  }
  double improving = 0.0;
  for (int g = f + 1; g <= n; ++g) improving += out.q[static_cast<std::size_t>(g - f)];
  out.q[0] = 1.0 - improving;
  return out;
}

/// Best-of-lambda fitness distribution. The generation lands at level g when
/// every offspring stays within [f..g] and not all stay within [f..g-1], so
/// q(g) = cum(g)^lambda - cum(g-1)^lambda over the single-offspring cumulative
/// sums. Cumulative values are clamped to [0,1] before exponentiation to keep
/// floating-point cancellation from leaking outside the unit interval.
inline LevelDistribution generation_distribution(const LevelDistribution& single,
                                                 std::int64_t lambda) {
  if (lambda < 1) throw std::invalid_argument("generation_distribution: lambda must be >= 1");
  if (lambda == 1) return single;  // exact identity, by definition of the model
  LevelDistribution out;
  out.n = single.n;
  out.f = single.f;
  out.q.resize(single.q.size());
  const double power = static_cast<double>(lambda);
  double cum = std::clamp(single.q[0], 0.0, 1.0);
  double prev_pow = std::pow(cum, power);
  out.q[0] = prev_pow;
  for (std::size_t g = 1; g < single.q.size(); ++g) {
    cum = std::clamp(cum + single.q[g], 0.0, 1.0);
    const double cur_pow = std::pow(cum, power);
    out.q[g] = std::max(cur_pow - prev_pow, 0.0);
    prev_pow = cur_pow;
  }
  return out;
}

namespace detail {

constexpr double kAbsorbingTolerance = 1e-15;

/// Backward step of the expected-time recursion at level f. A residual
/// improving mass below kAbsorbingTolerance is treated as exactly zero and the
/// level (and everything funnelled through it) becomes infinite. Zero-mass
/// terms are skipped so that 0 * infinity never contaminates the sum.
inline void fill_level_time(const LevelDistribution& gen, std::vector<double>& t) {
  const int f = gen.f;
  const int n = gen.n;
  double acc = 0.0;
  for (int g = f + 1; g <= n; ++g) {
    const double q = gen.at(g);
    if (q > 0.0) acc += q * t[static_cast<std::size_t>(g)];
  }
  const double denom = 1.0 - gen.at(f);
  t[static_cast<std::size_t>(f)] =
      denom < kAbsorbingTolerance ? std::numeric_limits<double>::infinity() : (1.0 + acc) / denom;
}

/// Initialization-weighted expectation sum_f C(n,f) 2^-n t[f]; a lucky initial
/// sample contributes zero via t[n] = 0.
inline double init_weighted_expectation(int n, const std::vector<double>& t,
                                        const LogBinomial& table) {
  const double n_log2 = static_cast<double>(n) * 0.69314718055994530942;
  double expected = 0.0;
  for (int f = 0; f <= n; ++f)
    expected += std::exp(table.log_choose(n, f) - n_log2) * t[static_cast<std::size_t>(f)];
  return expected;
}

/// Shared-kernel dynamic program over all candidates: for each fitness level
/// the transition kernel is built once, applied to every candidate, and
/// released before the next level. Evaluating a single candidate runs the
/// exact same code path, which makes batch and one-at-a-time results
/// bit-identical.
inline std::vector<std::vector<double>> batch_time_profiles(
    int n, std::int64_t lambda, std::span<const StrengthDistribution> ds) {
  if (n < 1) throw std::invalid_argument("runtime dp: n must be >= 1");
  if (lambda < 1) throw std::invalid_argument("runtime dp: lambda must be >= 1");
  for (const auto& d : ds) {
    if (d.n != n) throw std::invalid_argument("runtime dp: candidate dimension mismatch");
    d.validate();
  }
  const LogBinomial table(n);
  std::vector<std::vector<double>> times(
      ds.size(), std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int f = n - 1; f >= 0; --f) {
    const TransitionKernel kernel = build_kernel(n, f, table);
    for (std::size_t c = 0; c < ds.size(); ++c) {
      const LevelDistribution single = offspring_distribution(kernel, ds[c]);
      const LevelDistribution gen = generation_distribution(single, lambda);
      fill_level_time(gen, times[c]);
    }
  }
  return times;
}

}  // namespace detail

inline RuntimeProfile runtime_profile(int n, std::int64_t lambda, const StrengthDistribution& d) {
  auto times = detail::batch_time_profiles(n, lambda, std::span<const StrengthDistribution>(&d, 1));
  RuntimeProfile profile;
  profile.n = n;
  profile.lambda = lambda;
  profile.t = std::move(times.front());
  profile.expected = detail::init_weighted_expectation(n, profile.t, LogBinomial(n));
  return profile;
}

inline double expected_runtime(int n, std::int64_t lambda, const StrengthDistribution& d) {
  return runtime_profile(n, lambda, d).expected;
}

/// Expected runtimes for several candidates sharing (n, lambda). Bit-for-bit
/// equal to evaluating each candidate on its own, at one kernel build per
/// fitness level for the whole batch.
inline std::vector<double> batch_expected_runtime(int n, std::int64_t lambda,
                                                  std::span<const StrengthDistribution> ds) {
  const auto times = detail::batch_time_profiles(n, lambda, ds);
  const LogBinomial table(n);
  std::vector<double> out(ds.size());
  for (std::size_t c = 0; c < ds.size(); ++c)
    out[c] = detail::init_weighted_expectation(n, times[c], table);
  return out;
}

}  // namespace omsd
