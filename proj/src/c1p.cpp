#include "abilityrank/c1p.hpp"

#include <algorithm>
#include <numeric>

namespace abilityrank {

bool is_p_matrix(const Eigen::MatrixXd& binary) {
  for (Eigen::Index c = 0; c < binary.cols(); ++c) {
    Eigen::Index first = -1, last = -1;
    int count = 0;
    for (Eigen::Index r = 0; r < binary.rows(); ++r) {
      double x = binary(r, c);
      if (x != 0.0 && x != 1.0)
        throw NonBinaryError("matrix entries must be 0 or 1");
      if (x == 1.0) {
        if (first < 0) first = r;
        last = r;
        ++count;
      }
    }
    if (count > 0 && last - first + 1 != count) return false;
  }
  return true;
}

bool is_p_matrix(const ResponseMatrix& matrix, std::span<const int> order) {
  if (static_cast<int>(order.size()) != matrix.user_count())
    throw DimensionMismatchError("permutation length must equal user count");
  std::vector<int> position(matrix.user_count());
  for (int r = 0; r < matrix.user_count(); ++r) position[order[r]] = r;

  const int cols = matrix.column_count();
  std::vector<int> first(cols, -1), last(cols, -1), count(cols, 0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    int p = position[u];
    for (std::int32_t c : matrix.row(u)) {
      if (first[c] < 0 || p < first[c]) first[c] = p;
      if (p > last[c]) last[c] = p;
      ++count[c];
    }
  }
  for (int c = 0; c < cols; ++c)
    if (count[c] > 0 && last[c] - first[c] + 1 != count[c]) return false;
  return true;
}

std::optional<PermutationCertificate> brute_force_c1p_order(
    const Eigen::MatrixXd& binary) {
  const int m = static_cast<int>(binary.rows());
  if (m > 8) throw TooLargeError("brute-force search limited to 8 rows");

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);

  std::optional<PermutationCertificate> best;
  std::uint64_t certifying = 0;
  Eigen::MatrixXd permuted(binary.rows(), binary.cols());
  do {
    for (int r = 0; r < m; ++r) permuted.row(r) = binary.row(perm[r]);
    if (is_p_matrix(permuted)) {
      ++certifying;
      if (!best) best = PermutationCertificate{perm, true, 0};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (best) best->certifying_count = certifying;
  return best;
}

std::optional<PermutationCertificate> brute_force_c1p_order(
    const ResponseMatrix& matrix) {
  const int m = matrix.user_count();
  if (m > 8) throw TooLargeError("brute-force search limited to 8 rows");

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);

  std::optional<PermutationCertificate> best;
  std::uint64_t certifying = 0;
  do {
    if (is_p_matrix(matrix, perm)) {
      ++certifying;
      if (!best) best = PermutationCertificate{perm, true, 0};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (best) best->certifying_count = certifying;
  return best;
}

bool is_r_matrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw NonSquareError("R-matrix check needs square");
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12) return false;

  // Within each row, values fall off with distance from the diagonal.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i + 1 < n; ++i)
      if (a(j, i) < a(j, i + 1) - 1e-12) return false;  // right of diagonal
    for (Eigen::Index i = 0; i + 1 < j; ++i)
      if (a(j, i) > a(j, i + 1) + 1e-12) return false;  // left of diagonal
  }
  return true;
}

}  // namespace abilityrank
