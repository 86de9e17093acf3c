// Acceptance suite: exercises the full pipeline end to end and prints one
// PASS/FAIL line per criterion. Exit status is the number of failed criteria.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "omsd/omsd.hpp"
#include "test_helpers.hpp"

using namespace omsd;
using omsd_test::random_simplex;
using omsd_test::rls_closed_form;

namespace {

unsigned g_threads = 0;  // 0 = all cores

struct Criterion {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void expect_near(double actual, double target, double tol, const std::string& what) {
    expect(std::fabs(actual - target) <= tol,
           what + " = " + format_full(actual) + ", want " + format_full(target) + " +- " +
               format_full(tol));
  }
};

void report(int index, const std::string& name, const Criterion& c, int& failures) {
  if (c.ok) {
    std::printf("PASS  criterion %d: %s\n", index, name.c_str());
  } else {
    std::printf("FAIL  criterion %d: %s — %s\n", index, name.c_str(), c.detail.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

double best_of_runs(int n, std::int64_t lambda, int runs, std::uint64_t seed,
                    StrengthDistribution* best_dist = nullptr) {
  const auto cell = run_cell(n, lambda, runs, seed, CmaConfig{}, g_threads);
  if (best_dist) {
    for (const auto& run : cell.runs)
      if (run.best_runtime == cell.best_runtime) {
        *best_dist = run.best_distribution;
        break;
      }
  }
  return cell.best_runtime;
}

// 1. Exact dynamic-program values for the one-point operator, cross-checked
//    against the independent closed form.
Criterion criterion1() {
  Criterion c;
  const double rls3 = expected_runtime(3, 1, StrengthDistribution::one_point(3, 1));
  c.expect_near(rls3, 3.5, 1e-12, "runtime(3,1,onepoint:1)");
  c.expect_near(rls3, rls_closed_form(3), 1e-12, "closed form n=3");
  const double rls16 = expected_runtime(16, 1, StrengthDistribution::one_point(16, 1));
  c.expect_near(rls16, 43.00, 0.005, "runtime(16,1,onepoint:1)");
  c.expect_near(rls16, rls_closed_form(16), 1e-9, "closed form n=16");
  const double rls100 = expected_runtime(100, 1, StrengthDistribution::one_point(100, 1));
  c.expect_near(rls100, 449.42, 0.01, "runtime(100,1,onepoint:1)");
  c.expect(std::fabs(rls100 - rls_closed_form(100)) <= 1e-8 * rls100, "closed form n=100");
  return c;
}

// 2. Random-search limit of the conditional binomial distribution.
Criterion criterion2() {
  Criterion c;
  const auto binpos = make_baseline(BaselineSpec::parse("binpos:0.5"), 3);
  c.expect_near(expected_runtime(3, 64, binpos), 0.88, 0.005, "runtime(3,64,binpos:0.5)");
  c.expect_near(expected_runtime(3, 1024, binpos), 0.875, 1e-3, "runtime(3,1024,binpos:0.5)");
  return c;
}

// 3. The optimizer reproduces the published runtime table at desk scale
//    (best of 10 seeded runs per cell).
Criterion criterion3(std::map<std::pair<int, std::int64_t>, double>& bests) {
  Criterion c;
  const int ns[] = {3, 5, 8, 11, 16};
  const std::int64_t lambdas[] = {1, 2, 4, 8, 16};
  for (int n : ns) {
    for (std::int64_t lambda : lambdas) {
      const double best = best_of_runs(n, lambda, 10, 424242);
      bests[{n, lambda}] = best;
      const double table = *reference_runtime(n, lambda);
      c.expect_near(best, table, 0.01,
                    "best(" + std::to_string(n) + "," + std::to_string(lambda) + ")");
    }
  }
  return c;
}

// 4. Shapes of the recovered optimal distributions.
Criterion criterion4() {
  Criterion c;
  for (std::int64_t lambda : {1, 2, 3, 4}) {
    StrengthDistribution d;
    best_of_runs(16, lambda, 10, 777, &d);
    c.expect(d.weights[1] >= 0.999,
             "weights[1] at (16," + std::to_string(lambda) + ") = " + format_full(d.weights[1]));
  }
  StrengthDistribution d11;
  best_of_runs(11, 4, 10, 778, &d11);
  c.expect_near(d11.weights[1], 0.9919, 2e-3, "weights[1] at (11,4)");
  c.expect_near(d11.weights[10], 0.0081, 2e-3, "weights[10] at (11,4)");

  StrengthDistribution d3;
  best_of_runs(3, 64, 10, 779, &d3);
  c.expect_near(d3.weights[1], 3.0 / 7.0, 1e-3, "weights[1] at (3,64)");
  c.expect_near(d3.weights[2], 3.0 / 7.0, 1e-3, "weights[2] at (3,64)");
  c.expect_near(d3.weights[3], 1.0 / 7.0, 1e-3, "weights[3] at (3,64)");
  return c;
}

// 5. Robustness phase change at n=3 between lambda=64 and lambda=1024.
Criterion criterion5() {
  Criterion c;
  const auto tight = run_cell(3, 64, 50, 31337, CmaConfig{}, g_threads);
  c.expect(tight.max_std < 1e-4, "max_std at (3,64) = " + format_full(tight.max_std));

  const auto loose = run_cell(3, 1024, 50, 31337, CmaConfig{}, g_threads);
  c.expect(loose.max_std > 0.05, "max_std at (3,1024) = " + format_full(loose.max_std));
  for (int idx : loose.good_runs)
    c.expect(std::fabs(loose.runs[static_cast<std::size_t>(idx)].best_runtime - 0.875) <= 1e-9,
             "good run runtime at (3,1024) strays from 0.875");
  return c;
}

// 6. Monte Carlo agreement: at least 19 of 20 randomized cases within three
//    standard errors of the exact value at 1e5 trials.
Criterion criterion6() {
  Criterion c;
  Rng rng(606060);
  int within = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + static_cast<int>(rng.below(15));        // 2..16
    const std::int64_t lambda = 1 + static_cast<std::int64_t>(rng.below(16));  // 1..16
    const auto d = random_simplex(n, rng);
    const double exact = expected_runtime(n, lambda, d);
    if (!std::isfinite(exact)) {
      --i;  // full-support candidates are finite; resample just in case
      continue;
    }
    SimulateOptions options;
    options.threads = g_threads;
    const auto est = simulate_runtime(n, lambda, d, 100000, rng.next_u64(), options);
    if (std::fabs(est.mean - exact) <= 3.0 * est.std_error) ++within;
  }
  c.expect(within >= 19, "only " + std::to_string(within) + "/20 cases within 3 sigma");
  return c;
}

// 7. Regret anchors at n=3 against grid optima.
Criterion criterion7() {
  Criterion c;
  const std::vector<std::int64_t> lambdas{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  std::vector<double> optimal;
  for (std::int64_t lambda : lambdas)
    optimal.push_back(best_of_runs(3, lambda, 10, 70707));

  std::vector<BaselineSpec> specs;
  for (const char* text : {"rls", "sbm:auto", "sbm>0:auto", "sbm0to1:auto", "fastga:1.3",
                           "fastga:1.5", "fastga:1.7", "pow:1.3", "pow:1.5", "pow:1.7"})
    specs.push_back(BaselineSpec::parse(text));

  const auto records = compare_baselines(3, lambdas, specs, optimal);
  for (const auto& rec : records)
    c.expect(rec.regret >= 1.0 - 1e-9, rec.baseline.to_string() + " regret " +
                                           format_full(rec.regret) + " below 1 at lambda=" +
                                           std::to_string(rec.lambda));

  std::vector<double> rls_regret;
  for (const auto& rec : records)
    if (rec.baseline.to_string() == "rls") rls_regret.push_back(rec.regret);
  for (std::size_t i = 5; i + 1 < rls_regret.size(); ++i)  // lambda >= 16
    c.expect(rls_regret[i + 1] >= rls_regret[i] - 1e-9, "RLS regret not increasing for large lambda");
  c.expect(rls_regret.back() > rls_regret[4], "RLS regret failed to grow beyond lambda=16");
  c.expect_near(rls_regret.back(), 12.0 / 7.0, 0.01 * 12.0 / 7.0, "RLS regret at lambda=1024");
  return c;
}

// 8. Property spot checks: brute-forced kernel rows, the lambda=1 identity,
//    batch bit-equality, runtime monotonicity in lambda, and byte-identical
//    grid reruns.
Criterion criterion8(const std::map<std::pair<int, std::int64_t>, double>& bests) {
  Criterion c;
  for (int n = 1; n <= 12; ++n) {
    bool rows_match = true;
    for (int f = 0; f <= n && rows_match; ++f) {
      // Enumerate every flip set on an explicit bit string with f leading ones.
      const std::uint32_t parent = (f == 0) ? 0u : ((1u << f) - 1u);
      std::vector<std::vector<double>> counts(
          static_cast<std::size_t>(n) + 1, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
      std::vector<double> totals(static_cast<std::size_t>(n) + 1, 0.0);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = std::popcount(mask);
        counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(std::popcount(parent ^ mask))] +=
            1.0;
        totals[static_cast<std::size_t>(k)] += 1.0;
      }
      const auto kernel = build_kernel(n, f);
      for (int k = 0; k <= n && rows_match; ++k) {
        double row_sum = 0.0;
        for (int g = 0; g <= n; ++g) {
          row_sum += kernel.at(k, g);
          const double enumerated = counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)] /
                                    totals[static_cast<std::size_t>(k)];
          rows_match = rows_match && std::fabs(kernel.at(k, g) - enumerated) <= 1e-12;
        }
        rows_match = rows_match && std::fabs(row_sum - 1.0) <= 1e-12;
      }
    }
    c.expect(rows_match, "kernel rows disagree with enumeration at n=" + std::to_string(n));
  }

  Rng rng(808080);
  const auto q1 = offspring_distribution(build_kernel(10, 4), random_simplex(10, rng));
  c.expect(generation_distribution(q1, 1).q == q1.q, "lambda=1 identity violated");

  std::vector<StrengthDistribution> batch;
  for (int i = 0; i < 10; ++i) batch.push_back(random_simplex(8, rng));
  const auto values = batch_expected_runtime(8, 8, batch);
  for (std::size_t i = 0; i < batch.size(); ++i)
    c.expect(values[i] == expected_runtime(8, 8, batch[i]), "batch/sequential mismatch");

  for (int n : {3, 5, 8, 11, 16}) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t lambda : {1, 2, 4, 8, 16}) {
      const double best = bests.at({n, lambda});
      c.expect(best <= prev + 1e-9, "optimal runtime increased in lambda at n=" + std::to_string(n));
      prev = best;
    }
  }

  const auto cell_a = run_cell(3, 4, 3, 515151, CmaConfig{}, g_threads);
  const auto cell_b = run_cell(3, 4, 3, 515151, CmaConfig{}, g_threads);
  c.expect(cell_to_json(cell_a).dump() == cell_to_json(cell_b).dump(),
           "grid rerun not byte-identical");
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  std::map<std::pair<int, std::int64_t>, double> bests;

  report(1, "exact dynamic-program values (closed-form cross-check)", criterion1(), failures);
  report(2, "random-search limit at n=3", criterion2(), failures);
  report(3, "optimizer reproduces the runtime table at desk scale", criterion3(bests), failures);
  report(4, "optimal-distribution shape checks", criterion4(), failures);
  report(5, "robustness phase change at n=3", criterion5(), failures);
  report(6, "dynamic program vs Monte Carlo simulation", criterion6(), failures);
  report(7, "regret anchors at n=3", criterion7(), failures);
  report(8, "property suites", criterion8(bests), failures);

  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria failed\n", failures);
  return failures;
}
