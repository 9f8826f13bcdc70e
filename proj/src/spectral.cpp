#include "abilityrank/spectral.hpp"

#include <cmath>

#include "abilityrank/rng.hpp"

namespace abilityrank {

namespace {

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void flip_to_canonical_sign(std::vector<double>& v) {
  for (double x : v) {
    if (x == 0.0) continue;
    if (x < 0.0)
      for (double& y : v) y = -y;
    return;
  }
}

std::vector<double> random_unit_start(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(dim);
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    double n = norm2(v);
    if (n >= 1e-12) {
      for (double& x : v) x /= n;
      return v;
    }
  }
  throw ZeroIterateError("random initialization degenerate");
}

}  // namespace

SpectralResult power_iteration(const MatVec& apply, int dim,
                               const PowerConfig& config) {
  if (dim < 1) throw DimensionMismatchError("operator dimension must be >= 1");
  if (config.tol <= 0.0 || config.max_iter < 1)
    throw ConfigInvalidError("power iteration needs tol > 0 and max_iter >= 1");

  std::vector<double> v = random_unit_start(dim, config.seed);

  SpectralResult result;
  for (int t = 1; t <= config.max_iter; ++t) {
    std::vector<double> w = apply(v);
    double n = norm2(w);
    if (n < 1e-12) throw ZeroIterateError("operator annihilated the iterate");
    for (double& x : w) x /= n;

    double change = 0.0;
    for (int i = 0; i < dim; ++i) {
      double d = w[i] - v[i];
      change += d * d;
    }
    v = std::move(w);
    result.iterations = t;
    if (std::sqrt(change) < config.tol) {
      result.converged = true;
      break;
    }
  }

  result.eigenvalue = dot(v, apply(v));
  flip_to_canonical_sign(v);
  result.eigenvector = std::move(v);
  return result;
}

SpectralResult second_eigvec_hotelling(const MatVec& apply,
                                       const MatVec& apply_transposed,
                                       std::span<const double> right_dominant,
                                       const PowerConfig& config) {
  const int dim = static_cast<int>(right_dominant.size());
  SpectralResult left = power_iteration(apply_transposed, dim, config);

  const double lambda1 = left.eigenvalue;
  const double denom = dot(left.eigenvector, right_dominant);
  if (std::abs(denom) < 1e-12)
    throw DegenerateDeflationError(
        "left and right dominant eigenvectors are orthogonal");

  // A' x = A x - lambda1 * v1 * (u1^T x) / (u1^T v1)
  std::vector<double> v1(right_dominant.begin(), right_dominant.end());
  std::vector<double> u1 = left.eigenvector;
  MatVec deflated = [&apply, lambda1, denom, v1, u1](
                        std::span<const double> x) {
    std::vector<double> y = apply(x);
    double scale = lambda1 * dot(u1, x) / denom;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= scale * v1[i];
    return y;
  };

  SpectralResult second = power_iteration(deflated, dim, config);
  second.iterations += left.iterations;
  second.converged = second.converged && left.converged;
  return second;
}

}  // namespace abilityrank
