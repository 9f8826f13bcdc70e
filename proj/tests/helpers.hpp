#pragma once

#include <Eigen/Dense>
#include <vector>

#include "abilityrank/response_matrix.hpp"
#include "abilityrank/rng.hpp"

namespace test {

using abilityrank::ResponseMatrix;
using abilityrank::ResponseRecord;

// 3 users x 2 items x 2 options; a P-matrix with equal row sums. Rows of the
// one-hot form: [1,0,1,0], [1,0,0,1], [0,1,0,1].
inline std::vector<ResponseRecord> ex1_records() {
  return {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}, {2, 0, 1}, {2, 1, 1}};
}

inline ResponseMatrix ex1() {
  auto records = ex1_records();
  return ResponseMatrix::from_records(records);
}

// Dense one-hot matrix read straight off the stored rows.
inline Eigen::MatrixXd dense_c(const ResponseMatrix& m) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m.user_count(), m.column_count());
  for (int u = 0; u < m.user_count(); ++u)
    for (std::int32_t col : m.row(u)) c(u, col) = 1.0;
  return c;
}

// Independent dense construction of the update matrix from the one-hot form.
inline Eigen::MatrixXd oracle_u(const Eigen::MatrixXd& c) {
  Eigen::MatrixXd crow = c, ccol = c;
  for (int r = 0; r < c.rows(); ++r) crow.row(r) /= c.row(r).sum();
  for (int col = 0; col < c.cols(); ++col) ccol.col(col) /= c.col(col).sum();
  return crow * ccol.transpose();
}

inline Eigen::MatrixXd oracle_s(int m) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m - 1, m);
  for (int j = 0; j < m - 1; ++j) {
    s(j, j) = -1.0;
    s(j, j + 1) = 1.0;
  }
  return s;
}

inline Eigen::MatrixXd oracle_t(int m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m - 1);
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < j; ++i) t(j, i) = 1.0;
  return t;
}

inline Eigen::MatrixXd oracle_laplacian(const Eigen::MatrixXd& c) {
  Eigen::MatrixXd cct = c * c.transpose();
  Eigen::MatrixXd l = -cct;
  l.diagonal() += cct.rowwise().sum();
  return l;
}

// Real parts of the eigenvalues, descending. Small matrices only.
inline std::vector<double> oracle_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  std::vector<double> values(a.rows());
  for (int i = 0; i < a.rows(); ++i) values[i] = solver.eigenvalues()(i).real();
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

// Random instance where every user answers every item; connected and with
// equal row sums by construction (resampled until connected).
inline ResponseMatrix random_full_instance(abilityrank::Rng& rng, int users,
                                           int items, int options) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<ResponseRecord> records;
    for (int u = 0; u < users; ++u)
      for (int i = 0; i < items; ++i)
        records.push_back(
            {u, i, static_cast<std::int64_t>(rng.below(options))});
    ResponseMatrix m =
        ResponseMatrix::from_records(records, users, items, options)
            .drop_empty_columns();
    if (m.connected_components().size() == 1) return m;
  }
  throw std::runtime_error("failed to sample a connected instance");
}

// Random instance with partially answered items; users answering nothing are
// given one random answer. Resampled until connected.
inline ResponseMatrix random_sparse_instance(abilityrank::Rng& rng, int users,
                                             int items, int options,
                                             double p_answer) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<ResponseRecord> records;
    for (int u = 0; u < users; ++u) {
      bool answered = false;
      for (int i = 0; i < items; ++i) {
        if (rng.uniform01() >= p_answer) continue;
        records.push_back(
            {u, i, static_cast<std::int64_t>(rng.below(options))});
        answered = true;
      }
      if (!answered)
        records.push_back({u, static_cast<std::int64_t>(rng.below(items)),
                           static_cast<std::int64_t>(rng.below(options))});
    }
    ResponseMatrix m =
        ResponseMatrix::from_records(records, users, items, options)
            .drop_empty_columns();
    if (m.connected_components().size() == 1) return m;
  }
  throw std::runtime_error("failed to sample a connected instance");
}

}  // namespace test
