#include "abilityrank/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace abilityrank {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](int a, int b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean 1-based rank.
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DimensionMismatchError("inputs must have equal length");
  if (x.size() < 2)
    throw DimensionMismatchError("correlation needs at least 2 entries");

  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);

  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = rx[i] - mx;
    double dy = ry[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw ConstantInputError("correlation undefined for constant input");
  return sxy / std::sqrt(sxx * syy);
}

double rank_displacement(std::span<const int> p, std::span<const int> q) {
  if (p.size() != q.size())
    throw DimensionMismatchError("rankings must have equal length");
  const int m = static_cast<int>(p.size());

  std::vector<int> rank_p(m, -1), rank_q(m, -1);
  for (int r = 0; r < m; ++r) {
    if (p[r] < 0 || p[r] >= m || q[r] < 0 || q[r] >= m ||
        rank_p[p[r]] >= 0 || rank_q[q[r]] >= 0)
      throw ConfigInvalidError("inputs must be permutations of the users");
    rank_p[p[r]] = r;
    rank_q[q[r]] = r;
  }

  double total = 0.0;
  for (int u = 0; u < m; ++u) total += std::abs(rank_p[u] - rank_q[u]);
  return total / m / m;
}

double eigvec_variance(std::span<const double> v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (std::abs(norm - 1.0) > 1e-9)
    throw NotUnitError("input must be a unit vector");

  const double n = static_cast<double>(v.size());
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / n;
}

BenchRecord bench_run(Method method, const Dataset& dataset,
                      const BenchConfig& config) {
  if (config.repeats < 1) throw ConfigInvalidError("repeats must be >= 1");

  // Preprocessing is excluded from the timed region.
  ResponseMatrix matrix = dataset.responses.drop_empty_columns();
  const AnswerKey* key = method == Method::TrueAnswer ? &dataset.key : nullptr;

  using clock = std::chrono::steady_clock;
  const double timeout_ms = config.timeout_s * 1000.0;

  auto timed_call = [&](int* iterations) {
    auto start = clock::now();
    RankResult result = run_method(method, matrix, config.power, key);
    auto stop = clock::now();
    if (iterations != nullptr) *iterations = result.iterations;
    double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (ms > timeout_ms) throw TimeoutError(method_name(method), ms);
    return ms;
  };

  timed_call(nullptr);  // warm-up, discarded

  BenchRecord record;
  record.method = method_name(method);
  record.m = matrix.user_count();
  record.n = dataset.config.items;
  record.k = dataset.config.options;
  record.seed = dataset.config.seed;

  std::vector<double> times(config.repeats);
  for (int r = 0; r < config.repeats; ++r)
    times[r] = timed_call(r == 0 ? &record.iterations : nullptr);

  std::sort(times.begin(), times.end());
  const int mid = config.repeats / 2;
  record.wall_ms = config.repeats % 2 == 1
                       ? times[mid]
                       : (times[mid - 1] + times[mid]) / 2.0;
  return record;
}

}  // namespace abilityrank
