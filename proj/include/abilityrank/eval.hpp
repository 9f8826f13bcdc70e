#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abilityrank/irt.hpp"
#include "abilityrank/rankers.hpp"

namespace abilityrank {

// Average (mid) ranks, 1-based; ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman rank correlation: Pearson correlation of the average-rank
// transforms. Throws ConstantInputError when either input has no variation
// and DimensionMismatchError on length mismatch or length < 2.
double spearman(std::span<const double> x, std::span<const double> y);

// Mean absolute rank difference between two rankings of the same users,
// scaled into [0, 1] by the user count.
double rank_displacement(std::span<const int> p, std::span<const int> q);

// Population variance of the entries of a unit vector; throws NotUnitError
// when the L2 norm is off by more than 1e-9.
double eigvec_variance(std::span<const double> v);

struct BenchConfig {
  int repeats = 5;
  double timeout_s = 1000.0;
  PowerConfig power;
};

struct BenchRecord {
  std::string method;
  int m = 0;
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  double wall_ms = 0.0;
};

// Times the ranking call only: one discarded warm-up run, then
// config.repeats timed runs, reporting the median wall-clock time. Throws
// TimeoutError if any run exceeds the timeout.
BenchRecord bench_run(Method method, const Dataset& dataset,
                      const BenchConfig& config);

}  // namespace abilityrank
