#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace omsd {

// Known optimal expected runtimes (generations, rounded to two decimals) on
// the standard benchmark grid. Backs `compare --optimal paper` so regret
// tables can be cross-checked without re-running the optimizer.

inline constexpr std::array<int, 11> kReferenceNs = {3, 5, 8, 11, 16, 23, 32, 45, 64, 91, 100};

inline constexpr std::array<std::int64_t, 15> kReferenceLambdas = {
    1, 2, 3, 4, 5, 6, 7, 8, 16, 32, 64, 128, 256, 512, 1024};

inline constexpr std::array<std::array<double, 15>, 11> kReferenceRuntimes = {{
    {3.50, 2.26, 1.87, 1.64, 1.48, 1.37, 1.28, 1.21, 0.96, 0.88, 0.88, 0.88, 0.87, 0.87, 0.87},
    {7.97, 4.78, 3.78, 3.26, 2.92, 2.67, 2.49, 2.35, 1.78, 1.39, 1.10, 0.98, 0.97, 0.97, 0.97},
    {16.20, 9.32, 7.12, 6.04, 5.36, 4.89, 4.54, 4.27, 3.15, 2.43, 1.98, 1.67, 1.39, 1.14, 1.01},
    {25.59, 14.45, 10.84, 9.11, 8.04, 7.30, 6.76, 6.34, 4.63, 3.53, 2.82, 2.33, 2.01, 1.83, 1.62},
    {43.00, 23.87, 17.64, 14.62, 12.83, 11.60, 10.71, 10.02, 7.26, 5.46, 4.31, 3.54, 3.01, 2.61,
     2.26},
    {69.95, 38.35, 28.02, 22.99, 20.04, 18.04, 16.60, 15.50, 11.14, 8.32, 6.51, 5.30, 4.46, 3.83,
     3.34},
    {107.69, 58.52, 42.40, 34.52, 29.91, 26.84, 24.62, 22.94, 16.34, 12.14, 9.42, 7.62, 6.38, 5.47,
     4.79},
    {166.58, 89.83, 64.63, 52.27, 45.03, 40.25, 36.82, 34.23, 24.17, 17.84, 13.74, 11.05, 9.21,
     7.87, 6.86},
    {259.25, 138.90, 99.31, 79.86, 68.44, 60.95, 55.59, 51.56, 36.09, 26.45, 20.23, 16.17, 13.39,
     11.41, 9.92},
    {400.44, 213.38, 151.76, 121.44, 103.60, 91.93, 83.62, 77.39, 53.70, 39.07, 29.70, 23.59,
     19.45, 16.50, 14.31},
    {449.42, 239.17, 169.88, 135.79, 115.70, 102.57, 93.24, 86.24, 59.70, 43.36, 32.90, 26.09,
     21.48, 18.22, 15.79},
}};

inline std::optional<double> reference_runtime(int n, std::int64_t lambda) {
  for (std::size_t r = 0; r < kReferenceNs.size(); ++r) {
    if (kReferenceNs[r] != n) continue;
    for (std::size_t c = 0; c < kReferenceLambdas.size(); ++c)
      if (kReferenceLambdas[c] == lambda) return kReferenceRuntimes[r][c];
  }
  return std::nullopt;
}

}  // namespace omsd
