#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace omsd {

/// Probability distribution over mutation strengths 0..n: weights[k] is the
/// probability of flipping exactly k distinct bits. The (1+lambda) EA variants
/// studied here are fully described by one of these.
struct StrengthDistribution {
  int n = 0;
  std::vector<double> weights;  // size n + 1, indexed by strength k

  static constexpr double kSumTolerance = 1e-12;

  StrengthDistribution() = default;
  StrengthDistribution(int dim, std::vector<double> w) : n(dim), weights(std::move(w)) {}

  /// Unit mass at strength k (k = 1 gives the RLS operator).
  static StrengthDistribution one_point(int n, int k) {
    if (n < 1 || k < 0 || k > n)
      throw std::invalid_argument("one_point: require 1 <= n and 0 <= k <= n");
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    w[static_cast<std::size_t>(k)] = 1.0;
    return {n, std::move(w)};
  }

  bool valid() const noexcept {
    if (n < 1 || weights.size() != static_cast<std::size_t>(n) + 1) return false;
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) return false;  // also rejects NaN
      sum += w;
    }
    return std::fabs(sum - 1.0) <= kSumTolerance;
  }

  void validate() const {
    if (n < 1 || weights.size() != static_cast<std::size_t>(n) + 1)
      throw std::invalid_argument("StrengthDistribution: weights must have n+1 entries, n >= 1");
    double sum = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (!(weights[k] >= 0.0))
        throw std::invalid_argument("StrengthDistribution: negative weight at k=" +
                                    std::to_string(k));
      sum += weights[k];
    }
    if (std::fabs(sum - 1.0) > kSumTolerance)
      throw std::invalid_argument("StrengthDistribution: weights sum to " + std::to_string(sum) +
                                  ", expected 1");
  }
};

}  // namespace omsd
