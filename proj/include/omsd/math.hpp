#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace omsd {

/// Log-factorial table supporting log-binomial lookups for arguments up to n.
/// Log-space evaluation keeps C(a,b) usable far beyond the range where the
/// coefficients themselves fit in a double.
class LogBinomial {
 public:
  explicit LogBinomial(int n) : log_fact_(static_cast<std::size_t>(n) + 1) {
    if (n < 0) throw std::invalid_argument("LogBinomial: n must be >= 0");
    for (int k = 0; k <= n; ++k)
      log_fact_[static_cast<std::size_t>(k)] = std::lgamma(static_cast<double>(k) + 1.0);
  }

  /// log C(a, b); -infinity when the coefficient is zero (b out of [0, a]).
  double log_choose(int a, int b) const {
    if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
    return log_fact_[static_cast<std::size_t>(a)] - log_fact_[static_cast<std::size_t>(b)] -
           log_fact_[static_cast<std::size_t>(a - b)];
  }

  double choose(int a, int b) const { return std::exp(log_choose(a, b)); }

  int max_n() const { return static_cast<int>(log_fact_.size()) - 1; }

 private:
  std::vector<double> log_fact_;
};

inline double log_choose(int a, int b) {
  if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(a) + 1.0) - std::lgamma(static_cast<double>(b) + 1.0) -
         std::lgamma(static_cast<double>(a - b) + 1.0);
}

}  // namespace omsd
