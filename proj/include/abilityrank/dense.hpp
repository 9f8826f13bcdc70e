#pragma once

#include <Eigen/Dense>
#include <vector>

#include "abilityrank/response_matrix.hpp"

namespace abilityrank {

// Dense materializations and a small dense eigendecomposition. These back
// the small-scale oracle paths (tests and the dense Fiedler ranker); the
// production rankers never materialize these matrices.

Eigen::MatrixXd dense_response(const ResponseMatrix& matrix);

// U = C^row (C^col)^T.
Eigen::MatrixXd dense_update_matrix(const ResponseMatrix& matrix);

// U^diff = S U T.
Eigen::MatrixXd dense_diff_update_matrix(const ResponseMatrix& matrix);

// L = D - C C^T with D the diagonal of row sums of C C^T.
Eigen::MatrixXd dense_laplacian(const ResponseMatrix& matrix);

// Applies S (adjacent differences) and T (prefix sums with leading zero) to
// the rows/columns of a dense matrix: S A T.
Eigen::MatrixXd dense_sandwich(const Eigen::MatrixXd& a);

struct DenseEig {
  std::vector<double> values;  // descending
  Eigen::MatrixXd vectors;     // column i pairs with values[i]
};

// Full spectrum of a small real matrix (dimension at most 64), eigenvalues
// sorted descending by real part. Throws NonSquareError / TooLargeError.
DenseEig dense_eig_oracle(const Eigen::MatrixXd& a);

}  // namespace abilityrank
