#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "omsd/math.hpp"
#include "omsd/strength_distribution.hpp"

namespace omsd {

enum class BaselineKind {
  one_point,      // unit mass at strength k (k = 1 is RLS)
  sbm,            // standard bit mutation, Bin(n, p) including strength 0
  sbm_resample,   // Bin(n, p) conditioned on strength >= 1
  sbm_shift,      // Bin(n, p) with the strength-0 mass moved to strength 1
  fast_ga,        // power law k^-beta truncated to 1..floor(n/2)
  power_law,      // power law k^-beta on the full range 1..n
  cond_binomial,  // Bin(n, p) conditioned on strength >= 1 (random search at p = 1/2)
};

/// Parameterized description of a classic mutation operator. For the sbm
/// family a non-positive rate means "auto", resolved to 1/n when the
/// distribution is built.
struct BaselineSpec {
  BaselineKind kind = BaselineKind::one_point;
  double p = 0.0;
  double beta = 0.0;
  int k = 1;

  /// Grammar: rls | onepoint:k | sbm:p | sbm>0:p | sbm0to1:p | fastga:beta |
  /// pow:beta | binpos:p, where p may be a number in (0,1] or `auto` (= 1/n).
  static BaselineSpec parse(std::string_view text);

  std::string to_string() const;
};

namespace detail {

inline std::vector<double> binomial_weights(int n, double p) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  if (p == 1.0) {
    w[static_cast<std::size_t>(n)] = 1.0;
    return w;
  }
  const LogBinomial table(n);
  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  for (int k = 0; k <= n; ++k)
    w[static_cast<std::size_t>(k)] =
        std::exp(table.log_choose(n, k) + k * log_p + (n - k) * log_1mp);
  return w;
}

inline std::vector<double> power_law_weights(int n, double beta, int max_k) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  double norm = 0.0;
  for (int k = 1; k <= max_k; ++k) norm += std::pow(static_cast<double>(k), -beta);
  for (int k = 1; k <= max_k; ++k)
    w[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), -beta) / norm;
  return w;
}

inline double resolve_rate(const BaselineSpec& spec, int n) {
  const double p = spec.p > 0.0 ? spec.p : 1.0 / static_cast<double>(n);
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("baseline: mutation rate must lie in (0, 1]");
  return p;
}

}  // namespace detail

/// Builds the exact strength distribution of a baseline operator for
/// dimension n. Throws std::invalid_argument when the spec is not valid
/// for n (e.g. onepoint:k with k > n, fastga on n < 2).
inline StrengthDistribution make_baseline(const BaselineSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("make_baseline: n must be >= 1");
  switch (spec.kind) {
    case BaselineKind::one_point:
      if (spec.k < 1 || spec.k > n)
        throw std::invalid_argument("baseline onepoint: k must lie in 1..n");
      return StrengthDistribution::one_point(n, spec.k);
    case BaselineKind::sbm:
      return {n, detail::binomial_weights(n, detail::resolve_rate(spec, n))};
    case BaselineKind::sbm_resample:
    case BaselineKind::cond_binomial: {
      const double p = detail::resolve_rate(spec, n);
      auto w = detail::binomial_weights(n, p);
      // P(strength >= 1) = 1 - (1-p)^n, computed without cancellation.
      const double positive_mass = -std::expm1(static_cast<double>(n) * std::log1p(-p));
      w[0] = 0.0;
      for (int k = 1; k <= n; ++k) w[static_cast<std::size_t>(k)] /= positive_mass;
      return {n, std::move(w)};
    }
    case BaselineKind::sbm_shift: {
      auto w = detail::binomial_weights(n, detail::resolve_rate(spec, n));
      w[1] += w[0];
      w[0] = 0.0;
      return {n, std::move(w)};
    }
    case BaselineKind::fast_ga: {
      if (!(spec.beta > 1.0)) throw std::invalid_argument("baseline fastga: beta must be > 1");
      if (n < 2) throw std::invalid_argument("baseline fastga: needs n >= 2 (support 1..n/2)");
      return {n, detail::power_law_weights(n, spec.beta, n / 2)};
    }
    case BaselineKind::power_law:
      if (!(spec.beta > 1.0)) throw std::invalid_argument("baseline pow: beta must be > 1");
      return {n, detail::power_law_weights(n, spec.beta, n)};
  }
  throw std::invalid_argument("make_baseline: unknown kind");
}

inline BaselineSpec BaselineSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  const auto numeric = [&](std::string_view v) {
    try {
      std::size_t used = 0;
      const double x = std::stod(std::string(v), &used);
      if (used != v.size()) throw std::invalid_argument("trailing characters");
      return x;
    } catch (const std::exception&) {
      throw std::invalid_argument("baseline spec: bad numeric argument in '" + std::string(text) +
                                  "'");
    }
  };
  const auto rate = [&](std::string_view v) {
    if (v == "auto") return 0.0;  // resolved to 1/n at build time
    const double p = numeric(v);
    if (!(p > 0.0 && p <= 1.0))
      throw std::invalid_argument("baseline spec: rate must lie in (0, 1] or be 'auto'");
    return p;
  };
  const auto require_arg = [&] {
    if (arg.empty())
      throw std::invalid_argument("baseline spec: missing ':' argument in '" + std::string(text) +
                                  "'");
  };

  BaselineSpec spec;
  if (name == "rls" && colon == std::string_view::npos) {
    spec.kind = BaselineKind::one_point;
    spec.k = 1;
  } else if (name == "onepoint") {
    require_arg();
    spec.kind = BaselineKind::one_point;
    const double k = numeric(arg);
    if (k < 1 || k != std::floor(k))
      throw std::invalid_argument("baseline spec: onepoint needs an integer k >= 1");
    spec.k = static_cast<int>(k);
  } else if (name == "sbm") {
    require_arg();
    spec.kind = BaselineKind::sbm;
    spec.p = rate(arg);
  } else if (name == "sbm>0") {
    require_arg();
    spec.kind = BaselineKind::sbm_resample;
    spec.p = rate(arg);
  } else if (name == "sbm0to1") {
    require_arg();
    spec.kind = BaselineKind::sbm_shift;
    spec.p = rate(arg);
  } else if (name == "fastga") {
    require_arg();
    spec.kind = BaselineKind::fast_ga;
    spec.beta = numeric(arg);
  } else if (name == "pow") {
    require_arg();
    spec.kind = BaselineKind::power_law;
    spec.beta = numeric(arg);
  } else if (name == "binpos") {
    require_arg();
    spec.kind = BaselineKind::cond_binomial;
    spec.p = rate(arg);
  } else {
    throw std::invalid_argument("baseline spec: unknown operator '" + std::string(text) + "'");
  }
  return spec;
}

inline std::string BaselineSpec::to_string() const {
  const auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return std::string(buf);
  };
  switch (kind) {
    case BaselineKind::one_point:
      return k == 1 ? "rls" : "onepoint:" + std::to_string(k);
    case BaselineKind::sbm:
      return p > 0.0 ? "sbm:" + num(p) : "sbm:auto";
    case BaselineKind::sbm_resample:
      return p > 0.0 ? "sbm>0:" + num(p) : "sbm>0:auto";
    case BaselineKind::sbm_shift:
      return p > 0.0 ? "sbm0to1:" + num(p) : "sbm0to1:auto";
    case BaselineKind::fast_ga:
      return "fastga:" + num(beta);
    case BaselineKind::power_law:
      return "pow:" + num(beta);
    case BaselineKind::cond_binomial:
      return p > 0.0 ? "binpos:" + num(p) : "binpos:auto";
  }
  return "?";
}

}  // namespace omsd
