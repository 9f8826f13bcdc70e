#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "abilityrank/response_matrix.hpp"

namespace abilityrank {

// True iff every column's ones form one contiguous block (an all-zero
// column passes vacuously). Entries must be 0 or 1; throws NonBinaryError.
bool is_p_matrix(const Eigen::MatrixXd& binary);

// Sparse variant: checks the one-hot matrix with rows reordered by the given
// permutation (order[r] = user index placed at row r). O(nnz).
bool is_p_matrix(const ResponseMatrix& matrix, std::span<const int> order);

struct PermutationCertificate {
  std::vector<int> permutation;  // row order that certifies the property
  bool verified = false;
  // Number of certifying permutations out of all m!. A consecutive-ones
  // ordering is unique when this is 2 (an order and its reverse), or 1 for
  // a single row.
  std::uint64_t certifying_count = 0;
};

// Exhaustive search over all row permutations (m <= 8). Returns the
// lexicographically first certifying permutation, or nullopt when no row
// order yields the consecutive ones property. Throws TooLargeError.
std::optional<PermutationCertificate> brute_force_c1p_order(
    const Eigen::MatrixXd& binary);
std::optional<PermutationCertificate> brute_force_c1p_order(
    const ResponseMatrix& matrix);

// Symmetric within 1e-12 and, along every row, entries fall off moving away
// from the diagonal. Throws NonSquareError.
bool is_r_matrix(const Eigen::MatrixXd& a);

}  // namespace abilityrank
