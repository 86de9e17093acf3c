#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "omsd/dp.hpp"
#include "omsd/experiments.hpp"
#include "omsd/io.hpp"

using Catch::Approx;
using namespace omsd;

TEST_CASE("run_cell is reproducible and filters good runs consistently") {
  CmaConfig config;
  const auto a = run_cell(3, 8, 6, 2024, config, 2);
  const auto b = run_cell(3, 8, 6, 2024, config, 1);
  REQUIRE(cell_to_json(a).dump() == cell_to_json(b).dump());

  REQUIRE_FALSE(a.good_runs.empty());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& run : a.runs) best = std::min(best, run.best_runtime);
  REQUIRE(a.best_runtime == best);

  for (int idx : a.good_runs) {
    const auto& run = a.runs[static_cast<std::size_t>(idx)];
    // Re-evaluate through the dynamic program, not the optimizer's cache.
    const double check = expected_runtime(a.n, a.lambda, run.best_distribution);
    REQUIRE(check <= a.best_runtime * (1.0 + 1e-9));
  }
}

TEST_CASE("a single run is its own good run") {
  CmaConfig config;
  const auto cell = run_cell(3, 4, 1, 7, config, 1);
  REQUIRE(cell.good_runs == std::vector<int>{0});
  REQUIRE(cell.best_runtime == cell.runs[0].best_runtime);
}

TEST_CASE("run_grid covers the requested cells in order and reruns identically") {
  GridSpec spec;
  spec.ns = {3};
  spec.lambdas = {1, 2, 4};
  spec.runs_per_cell = 3;
  spec.base_seed = 5;
  CmaConfig config;
  const auto cells = run_grid(spec, config, 2);
  REQUIRE(cells.size() == 3);
  // Optimal runtime is non-increasing in lambda for fixed n.
  REQUIRE(cells[1].best_runtime <= cells[0].best_runtime + 1e-12);
  REQUIRE(cells[2].best_runtime <= cells[1].best_runtime + 1e-12);

  const auto again = run_grid(spec, config, 1);
  REQUIRE(again.size() == cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    REQUIRE(cell_to_json(again[i]).dump() == cell_to_json(cells[i]).dump());
}

TEST_CASE("count_support") {
  REQUIRE(count_support(StrengthDistribution::one_point(9, 1), 0.5) == 1);
  REQUIRE(count_support(StrengthDistribution::one_point(9, 1), 1e-9) == 1);

  // Every mass of Bin_{>0}(11, 1/2) exceeds 1/2^11.
  REQUIRE(count_support(make_baseline(BaselineSpec::parse("binpos:0.5"), 11), 1e-4) == 11);

  // Tabulated optimal distribution for (n=11, lambda=8): four strengths.
  std::vector<double> per_k_mean(11, 0.0);
  per_k_mean[0] = 0.8555;   // k = 1
  per_k_mean[3] = 0.0530;   // k = 4
  per_k_mean[9] = 0.0875;   // k = 10
  per_k_mean[10] = 0.0040;  // k = 11
  REQUIRE(count_support(per_k_mean, 1e-3) == 4);

  REQUIRE_THROWS_AS(count_support(per_k_mean, 0.0), std::invalid_argument);
}

TEST_CASE("baseline regrets") {
  SECTION("optimal baseline has regret one") {
    const std::int64_t lambdas[] = {1};
    const BaselineSpec specs[] = {BaselineSpec::parse("rls")};
    const double optimal[] = {expected_runtime(3, 1, StrengthDistribution::one_point(3, 1))};
    const auto records = compare_baselines(3, lambdas, specs, optimal);
    REQUIRE(records.size() == 1);
    REQUIRE(records[0].regret == Approx(1.0).margin(1e-12));
  }
  SECTION("random search approaches regret one, RLS approaches 12/7") {
    const std::int64_t lambdas[] = {1024};
    const BaselineSpec specs[] = {BaselineSpec::parse("binpos:0.5"), BaselineSpec::parse("rls")};
    const double optimal[] = {0.875};
    const auto records = compare_baselines(3, lambdas, specs, optimal);
    REQUIRE(records[0].regret == Approx(1.0).margin(1e-6));
    REQUIRE(records[1].regret == Approx(12.0 / 7.0).epsilon(0.01));
  }
  SECTION("regret is at least one against grid optima") {
    CmaConfig config;
    std::vector<std::int64_t> lambdas{2, 8};
    std::vector<double> optimal;
    for (auto lambda : lambdas)
      optimal.push_back(run_cell(3, lambda, 5, 11, config, 2).best_runtime);
    std::vector<BaselineSpec> specs;
    for (const char* text : {"rls", "sbm:auto", "sbm>0:auto", "sbm0to1:auto", "fastga:1.3",
                             "pow:1.5", "binpos:0.5"})
      specs.push_back(BaselineSpec::parse(text));
    for (const auto& rec : compare_baselines(3, lambdas, specs, optimal)) {
      REQUIRE(rec.regret >= 1.0 - 1e-9);
      REQUIRE(rec.baseline_runtime == Approx(rec.regret * rec.optimal_runtime));
    }
  }
  SECTION("an operator that cannot reach the optimum records infinite regret") {
    // Flipping all 4 bits strands the search at fitness 3.
    const std::int64_t lambdas[] = {2};
    const BaselineSpec specs[] = {BaselineSpec::parse("onepoint:4")};
    const double optimal[] = {1.0};
    const auto records = compare_baselines(4, lambdas, specs, optimal);
    REQUIRE(std::isinf(records[0].regret));
  }
}

TEST_CASE("run seeds are distinct across the grid") {
  REQUIRE(run_seed(1, 3, 4, 0) != run_seed(1, 3, 4, 1));
  REQUIRE(run_seed(1, 3, 4, 0) != run_seed(1, 4, 3, 0));
  REQUIRE(run_seed(1, 3, 4, 0) != run_seed(2, 3, 4, 0));
  REQUIRE(run_seed(7, 5, 2, 3) == run_seed(7, 5, 2, 3));
}
