#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "omsd/math.hpp"

namespace omsd {

/// Offspring-fitness probabilities on OneMax for a parent of fitness f:
/// s(k, g) is the probability that flipping exactly k uniformly chosen
/// distinct bits yields an offspring with g one-bits. Depends only on (n, f).
struct TransitionKernel {
  int n = 0;
  int f = 0;
  std::vector<double> s;  // (n+1) x (n+1), row-major in k

  double at(int k, int g) const {
    return s[static_cast<std::size_t>(k) * (static_cast<std::size_t>(n) + 1) +
             static_cast<std::size_t>(g)];
  }
};

/// Flipping k bits of which i are among the parent's f ones and j = k - i are
/// among its n - f zeros moves the fitness to g = f + j - i. Enumerating i
/// gives s(k, g) = C(n-f, j) C(f, i) / C(n, k) on the reachable (k, g) pairs
/// and zero elsewhere (parity or range violations).
inline TransitionKernel build_kernel(int n, int f, const LogBinomial& table) {
  if (n < 1 || f < 0 || f > n)
    throw std::invalid_argument("build_kernel: require n >= 1 and 0 <= f <= n");
  if (table.max_n() < n) throw std::invalid_argument("build_kernel: log-binomial table too small");

  TransitionKernel kernel;
  kernel.n = n;
  kernel.f = f;
  kernel.s.assign((static_cast<std::size_t>(n) + 1) * (static_cast<std::size_t>(n) + 1), 0.0);
  const std::size_t stride = static_cast<std::size_t>(n) + 1;
  for (int k = 0; k <= n; ++k) {
    const double log_total = table.log_choose(n, k);
    const int i_lo = std::max(0, k - (n - f));
    const int i_hi = std::min(k, f);
    for (int i = i_lo; i <= i_hi; ++i) {
      const int j = k - i;
      const int g = f + j - i;
      kernel.s[static_cast<std::size_t>(k) * stride + static_cast<std::size_t>(g)] =
          std::exp(table.log_choose(n - f, j) + table.log_choose(f, i) - log_total);
    }
  }
  return kernel;
}

inline TransitionKernel build_kernel(int n, int f) {
  if (n < 1 || f < 0 || f > n)
    throw std::invalid_argument("build_kernel: require n >= 1 and 0 <= f <= n");
  return build_kernel(n, f, LogBinomial(n));
}

}  // namespace omsd
