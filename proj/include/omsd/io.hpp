#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "omsd/experiments.hpp"
#include "omsd/sep_cmaes.hpp"
#include "omsd/strength_distribution.hpp"

namespace omsd {

using json = nlohmann::ordered_json;

/// 17 significant digits: enough to round-trip any double through text.
inline std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  json doc;
  in >> doc;
  return doc;
}

/// Distribution file schema: {"n": int, "weights": [w0 .. wn]}. Weights are
/// renormalized when they sum to 1 within 1e-9 (tolerant to text
/// round-tripping) and rejected otherwise. Extra keys are ignored, so
/// optimizer run records double as distribution files.
inline StrengthDistribution load_distribution(const json& doc) {
  if (!doc.contains("n") || !doc.contains("weights"))
    throw std::invalid_argument("distribution file: expected keys 'n' and 'weights'");
  StrengthDistribution d;
  d.n = doc.at("n").get<int>();
  d.weights = doc.at("weights").get<std::vector<double>>();
  if (d.n < 1 || d.weights.size() != static_cast<std::size_t>(d.n) + 1)
    throw std::invalid_argument("distribution file: weights must have n+1 entries");
  double sum = 0.0;
  for (double w : d.weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("distribution file: negative weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("distribution file: weights sum to " + format_full(sum) +
                                ", expected 1 within 1e-9");
  for (double& w : d.weights) w /= sum;
  return d;
}

inline StrengthDistribution load_distribution_file(const std::filesystem::path& path) {
  return load_distribution(load_json_file(path));
}

inline json run_to_json(const OptimizationRun& run) {
  json doc;
  doc["n"] = run.n;
  doc["lambda"] = run.lambda;
  doc["seed"] = run.seed;
  doc["runtime"] = run.best_runtime;
  doc["weights"] = run.best_distribution.weights;
  doc["genotype"] = run.best_genotype;
  doc["evals"] = run.evals_used;
  doc["termination"] = to_string(run.termination);
  return doc;
}

inline json cell_to_json(const CellResult& cell) {
  json doc;
  doc["n"] = cell.n;
  doc["lambda"] = cell.lambda;
  doc["base_seed"] = cell.base_seed;
  json runs = json::array();
  for (const auto& run : cell.runs) {
    json r;
    r["seed"] = run.seed;
    r["runtime"] = run.best_runtime;
    r["weights"] = run.best_distribution.weights;
    r["evals"] = run.evals_used;
    r["termination"] = to_string(run.termination);
    runs.push_back(std::move(r));
  }
  doc["runs"] = std::move(runs);
  doc["good_runs"] = cell.good_runs;
  doc["per_k_mean"] = cell.per_k_mean;
  doc["per_k_std"] = cell.per_k_std;
  doc["max_std"] = cell.max_std;
  return doc;
}

inline CellResult cell_from_json(const json& doc) {
  CellResult cell;
  cell.n = doc.at("n").get<int>();
  cell.lambda = doc.at("lambda").get<std::int64_t>();
  cell.base_seed = doc.at("base_seed").get<std::uint64_t>();
  for (const auto& r : doc.at("runs")) {
    OptimizationRun run;
    run.n = cell.n;
    run.lambda = cell.lambda;
    run.seed = r.at("seed").get<std::uint64_t>();
    run.best_runtime = r.at("runtime").get<double>();
    run.best_distribution.n = cell.n;
    run.best_distribution.weights = r.at("weights").get<std::vector<double>>();
    run.evals_used = r.at("evals").get<std::int64_t>();
    run.termination = termination_from_string(r.at("termination").get<std::string>());
    cell.runs.push_back(std::move(run));
  }
  cell.good_runs = doc.at("good_runs").get<std::vector<int>>();
  cell.per_k_mean = doc.at("per_k_mean").get<std::vector<double>>();
  cell.per_k_std = doc.at("per_k_std").get<std::vector<double>>();
  cell.max_std = doc.at("max_std").get<double>();
  return cell;
}

// Plot-ready CSV emitters: fixed column order, '.' decimal point, full
// precision.

inline std::string runtimes_csv(std::span<const CellResult> cells) {
  std::string out = "n,lambda,best_runtime\n";
  for (const auto& cell : cells)
    out += std::to_string(cell.n) + "," + std::to_string(cell.lambda) + "," +
           format_full(cell.best_runtime) + "\n";
  return out;
}

inline std::string support_csv(std::span<const CellResult> cells, double threshold) {
  std::string out = "n,lambda,support_count\n";
  for (const auto& cell : cells)
    out += std::to_string(cell.n) + "," + std::to_string(cell.lambda) + "," +
           std::to_string(count_support(cell.per_k_mean, threshold)) + "\n";
  return out;
}

inline std::string regret_csv(std::span<const RegretRecord> records) {
  std::string out = "n,lambda,baseline,runtime,regret\n";
  for (const auto& rec : records)
    out += std::to_string(rec.n) + "," + std::to_string(rec.lambda) + "," +
           rec.baseline.to_string() + "," + format_full(rec.baseline_runtime) + "," +
           format_full(rec.regret) + "\n";
  return out;
}

}  // namespace omsd
