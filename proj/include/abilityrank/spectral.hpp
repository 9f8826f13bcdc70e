#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "abilityrank/errors.hpp"

namespace abilityrank {

struct PowerConfig {
  double tol = 1e-5;       // L2 threshold on the change between iterates
  int max_iter = 1000;
  std::uint64_t seed = 0;  // seed of the random start vector
};

struct SpectralResult {
  double eigenvalue = 0.0;          // Rayleigh quotient at exit
  std::vector<double> eigenvector;  // unit L2 norm, first nonzero entry > 0
  int iterations = 0;
  bool converged = false;
};

using MatVec = std::function<std::vector<double>(std::span<const double>)>;

// Power iteration from a seeded random start. Normalizes every step and
// stops once the L2 change between successive unit iterates drops below
// config.tol (or at the iteration limit, with converged=false). Throws
// ZeroIterateError when the operator annihilates the iterate.
SpectralResult power_iteration(const MatVec& apply, int dim,
                               const PowerConfig& config);

// Second-largest eigenpair via Hotelling deflation: the dominant left
// eigenvector is computed by power iteration on the transposed operator,
// the known dominant right eigenvector is projected out, and a second power
// iteration runs on the deflated operator. The iteration count reported is
// the total over both runs.
SpectralResult second_eigvec_hotelling(const MatVec& apply,
                                       const MatVec& apply_transposed,
                                       std::span<const double> right_dominant,
                                       const PowerConfig& config);

}  // namespace abilityrank
