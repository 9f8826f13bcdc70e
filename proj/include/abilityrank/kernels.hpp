#pragma once

#include <span>
#include <vector>

#include "abilityrank/response_matrix.hpp"

namespace abilityrank {

enum class Axis { Row, Col };

// Per-nonzero weights of the row- or column-normalized response matrix,
// aligned with the CSR nonzero order of the ResponseMatrix.
struct NormalizedView {
  Axis axis;
  std::vector<double> values;
};

NormalizedView normalized_view(const ResponseMatrix& matrix, Axis axis);

// Adjacent differences: out[j] = v[j+1] - v[j], length m-1. O(m).
std::vector<double> diff_apply(std::span<const double> v);

// Exclusive prefix sums with a leading zero: out[0] = 0,
// out[j] = sum of w[0..j-1], length m = len(w)+1. O(m).
std::vector<double> cumsum_apply(std::span<const double> w);

// U*s where U is the row-normalized times transposed column-normalized
// response matrix, computed in O(nnz) without materializing U.
// Requires no empty rows or columns.
std::vector<double> u_matvec(const ResponseMatrix& matrix,
                             std::span<const double> s);

// Transposed counterpart, U^T * s. Same requirements and cost.
std::vector<double> ut_matvec(const ResponseMatrix& matrix,
                              std::span<const double> s);

// (C C^T) * s with the raw binary matrix. O(nnz).
std::vector<double> cct_matvec(const ResponseMatrix& matrix,
                               std::span<const double> s);

// Row sums of C C^T, the diagonal of the degree matrix used by the
// Laplacian. Entry j equals the sum of column degrees over user j's answers.
std::vector<double> cct_row_sums(const ResponseMatrix& matrix);

// Difference-space operator (S U T) * d, evaluated as cumulative sum,
// update-matrix multiply, then adjacent differences.
std::vector<double> udiff_matvec(const ResponseMatrix& matrix,
                                 std::span<const double> d);

// Largest entry of the degree matrix of C C^T; the spectral shift used by
// the Laplacian power method.
double abh_beta(const ResponseMatrix& matrix);

// (beta*I - S L T) * d with L = D - C C^T, evaluated matrix-free. Throws
// BetaTooSmallError when beta is below the largest degree entry.
std::vector<double> abh_shifted_matvec(const ResponseMatrix& matrix,
                                       std::span<const double> d, double beta);

}  // namespace abilityrank
