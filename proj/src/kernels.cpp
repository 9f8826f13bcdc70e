#include "abilityrank/kernels.hpp"

#include <algorithm>

namespace abilityrank {

namespace {

void require_no_empty_rows(const ResponseMatrix& m) {
  int u = m.first_empty_row();
  if (u >= 0) throw EmptyRowError(m.user_id(u));
}

void require_no_empty_columns(const ResponseMatrix& m) {
  if (m.has_empty_column())
    throw EmptyColumnError("matrix has never-chosen columns; drop them first");
}

void require_length(std::span<const double> v, std::size_t len,
                    const char* what) {
  if (v.size() != len)
    throw DimensionMismatchError(std::string(what) + ": expected length " +
                                 std::to_string(len) + ", got " +
                                 std::to_string(v.size()));
}

}  // namespace

NormalizedView normalized_view(const ResponseMatrix& matrix, Axis axis) {
  NormalizedView view{axis, {}};
  view.values.reserve(matrix.nnz());
  for (int u = 0; u < matrix.user_count(); ++u) {
    for (std::int32_t c : matrix.row(u)) {
      if (axis == Axis::Row) {
        view.values.push_back(1.0 / matrix.row_degree(u));
      } else {
        view.values.push_back(1.0 / matrix.col_degree(c));
      }
    }
  }
  return view;
}

std::vector<double> diff_apply(std::span<const double> v) {
  if (v.size() < 2)
    throw DimensionMismatchError("diff_apply needs at least 2 entries");
  std::vector<double> out(v.size() - 1);
  for (std::size_t j = 0; j + 1 < v.size(); ++j) out[j] = v[j + 1] - v[j];
  return out;
}

std::vector<double> cumsum_apply(std::span<const double> w) {
  std::vector<double> out(w.size() + 1);
  out[0] = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) out[j + 1] = out[j] + w[j];
  return out;
}

std::vector<double> u_matvec(const ResponseMatrix& matrix,
                             std::span<const double> s) {
  require_no_empty_rows(matrix);
  require_no_empty_columns(matrix);
  require_length(s, matrix.user_count(), "u_matvec");

  // w = (C^col)^T s: column-degree-weighted averages of the choosers.
  std::vector<double> w(matrix.column_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u)
    for (std::int32_t c : matrix.row(u)) w[c] += s[u];
  for (int c = 0; c < matrix.column_count(); ++c) w[c] /= matrix.col_degree(c);

  // s' = C^row w: per-user averages of the chosen option weights.
  std::vector<double> out(matrix.user_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    double acc = 0.0;
    for (std::int32_t c : matrix.row(u)) acc += w[c];
    out[u] = acc / matrix.row_degree(u);
  }
  return out;
}

std::vector<double> ut_matvec(const ResponseMatrix& matrix,
                              std::span<const double> s) {
  require_no_empty_rows(matrix);
  require_no_empty_columns(matrix);
  require_length(s, matrix.user_count(), "ut_matvec");

  // U^T = C^col (C^row)^T, so accumulate row-normalized then spread
  // column-normalized.
  std::vector<double> w(matrix.column_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    double share = s[u] / matrix.row_degree(u);
    for (std::int32_t c : matrix.row(u)) w[c] += share;
  }
  std::vector<double> out(matrix.user_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    double acc = 0.0;
    for (std::int32_t c : matrix.row(u)) acc += w[c] / matrix.col_degree(c);
    out[u] = acc;
  }
  return out;
}

std::vector<double> cct_matvec(const ResponseMatrix& matrix,
                               std::span<const double> s) {
  require_length(s, matrix.user_count(), "cct_matvec");
  std::vector<double> w(matrix.column_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u)
    for (std::int32_t c : matrix.row(u)) w[c] += s[u];
  std::vector<double> out(matrix.user_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    double acc = 0.0;
    for (std::int32_t c : matrix.row(u)) acc += w[c];
    out[u] = acc;
  }
  return out;
}

std::vector<double> cct_row_sums(const ResponseMatrix& matrix) {
  std::vector<double> d(matrix.user_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    double acc = 0.0;
    for (std::int32_t c : matrix.row(u)) acc += matrix.col_degree(c);
    d[u] = acc;
  }
  return d;
}

std::vector<double> udiff_matvec(const ResponseMatrix& matrix,
                                 std::span<const double> d) {
  if (matrix.user_count() < 2)
    throw DimensionMismatchError("difference operator needs at least 2 users");
  require_length(d, matrix.user_count() - 1, "udiff_matvec");
  std::vector<double> s = cumsum_apply(d);
  s = u_matvec(matrix, s);
  return diff_apply(s);
}

double abh_beta(const ResponseMatrix& matrix) {
  std::vector<double> degrees = cct_row_sums(matrix);
  return *std::max_element(degrees.begin(), degrees.end());
}

std::vector<double> abh_shifted_matvec(const ResponseMatrix& matrix,
                                       std::span<const double> d, double beta) {
  if (matrix.user_count() < 2)
    throw DimensionMismatchError("difference operator needs at least 2 users");
  require_length(d, matrix.user_count() - 1, "abh_shifted_matvec");
  if (beta < abh_beta(matrix))
    throw BetaTooSmallError("beta below the largest degree of C C^T");

  std::vector<double> s = cumsum_apply(d);
  std::vector<double> ls = cct_matvec(matrix, s);
  std::vector<double> degrees = cct_row_sums(matrix);
  for (int u = 0; u < matrix.user_count(); ++u) ls[u] = degrees[u] * s[u] - ls[u];
  std::vector<double> md = diff_apply(ls);
  std::vector<double> out(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) out[j] = beta * d[j] - md[j];
  return out;
}

}  // namespace abilityrank
