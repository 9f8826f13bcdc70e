#include "abilityrank/dense.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

namespace abilityrank {

Eigen::MatrixXd dense_response(const ResponseMatrix& matrix) {
  Eigen::MatrixXd c =
      Eigen::MatrixXd::Zero(matrix.user_count(), matrix.column_count());
  for (int u = 0; u < matrix.user_count(); ++u)
    for (std::int32_t col : matrix.row(u)) c(u, col) = 1.0;
  return c;
}

Eigen::MatrixXd dense_update_matrix(const ResponseMatrix& matrix) {
  Eigen::MatrixXd c = dense_response(matrix);
  Eigen::MatrixXd crow = c;
  for (int u = 0; u < c.rows(); ++u) {
    double deg = c.row(u).sum();
    if (deg == 0.0) throw EmptyRowError(matrix.user_id(u));
    crow.row(u) /= deg;
  }
  Eigen::MatrixXd ccol = c;
  for (int col = 0; col < c.cols(); ++col) {
    double deg = c.col(col).sum();
    if (deg == 0.0)
      throw EmptyColumnError("matrix has never-chosen columns; drop them first");
    ccol.col(col) /= deg;
  }
  return crow * ccol.transpose();
}

Eigen::MatrixXd dense_sandwich(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m - 1, m);
  for (Eigen::Index j = 0; j < m - 1; ++j) {
    s(j, j) = -1.0;
    s(j, j + 1) = 1.0;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m - 1);
  for (Eigen::Index j = 1; j < m; ++j)
    for (Eigen::Index i = 0; i < j; ++i) t(j, i) = 1.0;
  return s * a * t;
}

Eigen::MatrixXd dense_diff_update_matrix(const ResponseMatrix& matrix) {
  return dense_sandwich(dense_update_matrix(matrix));
}

Eigen::MatrixXd dense_laplacian(const ResponseMatrix& matrix) {
  Eigen::MatrixXd c = dense_response(matrix);
  Eigen::MatrixXd cct = c * c.transpose();
  Eigen::VectorXd degrees = cct.rowwise().sum();
  Eigen::MatrixXd l = -cct;
  l.diagonal() += degrees;
  return l;
}

DenseEig dense_eig_oracle(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw NonSquareError("eigendecomposition needs a square matrix");
  if (a.rows() > 64)
    throw TooLargeError("dense oracle limited to dimension 64");

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw Error("dense eigendecomposition failed to converge");

  Eigen::VectorXd values = solver.eigenvalues().real();
  Eigen::MatrixXd vectors = solver.eigenvectors().real();

  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return values(i) > values(j); });

  DenseEig out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values[i] = values(order[i]);
    out.vectors.col(static_cast<Eigen::Index>(i)) = vectors.col(order[i]);
  }
  return out;
}

}  // namespace abilityrank
