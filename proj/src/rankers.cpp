#include "abilityrank/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "abilityrank/dense.hpp"
#include "abilityrank/kernels.hpp"

namespace abilityrank {

namespace {

void require_connected(const ResponseMatrix& matrix) {
  auto components = matrix.connected_components();
  if (components.size() > 1) {
    std::vector<std::size_t> sizes;
    sizes.reserve(components.size());
    for (const auto& c : components) sizes.push_back(c.size());
    throw DisconnectedError(std::move(sizes));
  }
}

void require_spectral_input(const ResponseMatrix& matrix) {
  int u = matrix.first_empty_row();
  if (u >= 0) throw EmptyRowError(matrix.user_id(u));
  require_connected(matrix);
  if (matrix.user_count() < 2)
    throw DimensionMismatchError("spectral ranking needs at least 2 users");
}

// Spectral scores carry an arbitrary global sign. All spectral rankers share
// one convention: the first nonzero difference between adjacent user scores
// is positive. The difference-space methods satisfy it already through the
// eigenvector sign rule; the direct eigenvector methods are flipped here so
// both routes order identically before orientation.
void flip_by_first_diff(std::vector<double>& scores) {
  for (std::size_t j = 0; j + 1 < scores.size(); ++j) {
    double d = scores[j + 1] - scores[j];
    if (d == 0.0) continue;
    if (d < 0.0)
      for (double& x : scores) x = -x;
    return;
  }
}

}  // namespace

ScoreVector make_score_vector(std::vector<double> scores) {
  ScoreVector sv;
  sv.ranking.resize(scores.size());
  std::iota(sv.ranking.begin(), sv.ranking.end(), 0);
  std::stable_sort(sv.ranking.begin(), sv.ranking.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });
  sv.scores = std::move(scores);
  return sv;
}

RankResult rank_hnd_power(const ResponseMatrix& matrix,
                          const PowerConfig& config) {
  require_spectral_input(matrix);
  MatVec op = [&matrix](std::span<const double> d) {
    return udiff_matvec(matrix, d);
  };
  SpectralResult res = power_iteration(op, matrix.user_count() - 1, config);

  RankResult out;
  out.score = make_score_vector(cumsum_apply(res.eigenvector));
  out.iterations = res.iterations;
  out.converged = res.converged;
  out.diff = std::move(res.eigenvector);
  return out;
}

RankResult rank_hnd_deflation(const ResponseMatrix& matrix,
                              const PowerConfig& config) {
  require_spectral_input(matrix);
  const int m = matrix.user_count();
  MatVec apply = [&matrix](std::span<const double> s) {
    return u_matvec(matrix, s);
  };
  MatVec apply_t = [&matrix](std::span<const double> s) {
    return ut_matvec(matrix, s);
  };
  // The update matrix is row-stochastic, so its dominant right eigenvector
  // is the normalized ones vector.
  std::vector<double> ones(m, 1.0 / std::sqrt(static_cast<double>(m)));
  SpectralResult res = second_eigvec_hotelling(apply, apply_t, ones, config);

  flip_by_first_diff(res.eigenvector);
  RankResult out;
  out.score = make_score_vector(std::move(res.eigenvector));
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

RankResult rank_abh_power(const ResponseMatrix& matrix,
                          const PowerConfig& config) {
  require_spectral_input(matrix);
  if (matrix.has_empty_column())
    throw EmptyColumnError("matrix has never-chosen columns; drop them first");

  const int m = matrix.user_count();
  const std::vector<double> degrees = cct_row_sums(matrix);
  const double beta = *std::max_element(degrees.begin(), degrees.end());

  // The degree matrix of C C^T is applied as a full m-by-m matrix each
  // iteration, as in the published algorithm; the m^2 term is what caps this
  // method's scaling in the user count. abh_shifted_matvec offers the same
  // operator in O(nnz) for small-scale verification.
  Eigen::MatrixXd degree_matrix = Eigen::MatrixXd::Zero(m, m);
  for (int u = 0; u < m; ++u) degree_matrix(u, u) = degrees[u];

  MatVec op = [&matrix, &degree_matrix, beta, m](std::span<const double> d) {
    std::vector<double> s = cumsum_apply(d);
    Eigen::Map<const Eigen::VectorXd> sv(s.data(), m);
    Eigen::VectorXd ds = degree_matrix * sv;
    std::vector<double> ls = cct_matvec(matrix, s);
    for (int u = 0; u < m; ++u) ls[u] = ds(u) - ls[u];
    std::vector<double> md = diff_apply(ls);
    std::vector<double> out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) out[j] = beta * d[j] - md[j];
    return out;
  };
  SpectralResult res = power_iteration(op, m - 1, config);

  RankResult out;
  out.score = make_score_vector(cumsum_apply(res.eigenvector));
  out.iterations = res.iterations;
  out.converged = res.converged;
  out.diff = std::move(res.eigenvector);
  return out;
}

RankResult rank_abh_fiedler_dense(const ResponseMatrix& matrix) {
  const int m = matrix.user_count();
  if (m > 64) throw TooLargeError("dense Fiedler ranking limited to 64 users");
  if (m < 2)
    throw DimensionMismatchError("spectral ranking needs at least 2 users");

  DenseEig eig = dense_eig_oracle(dense_laplacian(matrix));
  // Eigenvalues are sorted descending; the Fiedler pair sits second to last.
  const double fiedler_value = eig.values[m - 2];
  const double scale = std::max(1.0, std::abs(eig.values.front()));
  if (std::abs(fiedler_value) <= 1e-9 * scale) {
    auto components = matrix.connected_components();
    std::vector<std::size_t> sizes;
    for (const auto& c : components) sizes.push_back(c.size());
    throw DisconnectedError(std::move(sizes));
  }

  std::vector<double> scores(m);
  for (int u = 0; u < m; ++u) scores[u] = eig.vectors(u, m - 2);
  flip_by_first_diff(scores);

  RankResult out;
  out.score = make_score_vector(std::move(scores));
  out.iterations = 0;
  return out;
}

RankResult rank_hits(const ResponseMatrix& matrix, const PowerConfig& config) {
  require_connected(matrix);
  MatVec op = [&matrix](std::span<const double> s) {
    return cct_matvec(matrix, s);
  };
  SpectralResult res = power_iteration(op, matrix.user_count(), config);

  RankResult out;
  out.score = make_score_vector(std::move(res.eigenvector));
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

RankResult rank_truthfinder(const ResponseMatrix& matrix,
                            const PowerConfig& config) {
  int empty = matrix.first_empty_row();
  if (empty >= 0) throw EmptyRowError(matrix.user_id(empty));

  const int m = matrix.user_count();
  std::vector<double> s(m, 0.9);
  std::vector<double> log_one_minus(matrix.column_count());
  std::vector<double> w(matrix.column_count());

  RankResult out;
  for (int t = 1; t <= config.max_iter; ++t) {
    // w = 1 - exp(C^T log(1 - s)): probability that at least one chooser is
    // right.
    std::fill(log_one_minus.begin(), log_one_minus.end(), 0.0);
    for (int u = 0; u < m; ++u) {
      double l = std::log1p(-s[u]);
      for (std::int32_t c : matrix.row(u)) log_one_minus[c] += l;
    }
    for (int c = 0; c < matrix.column_count(); ++c)
      w[c] = 1.0 - std::exp(log_one_minus[c]);

    double change = 0.0;
    for (int u = 0; u < m; ++u) {
      double acc = 0.0;
      for (std::int32_t c : matrix.row(u)) acc += w[c];
      double next = acc / matrix.row_degree(u);
      next = std::min(next, 1.0 - 1e-12);  // keep log1p finite
      change = std::max(change, std::abs(next - s[u]));
      s[u] = next;
    }
    out.iterations = t;
    if (change < config.tol) {
      out.converged = true;
      break;
    }
    out.converged = false;
  }

  out.score = make_score_vector(std::move(s));
  return out;
}

namespace {

RankResult investment_family(const ResponseMatrix& matrix,
                             const InvestmentConfig& config, bool pooled) {
  require_connected(matrix);
  int empty = matrix.first_empty_row();
  if (empty >= 0) throw EmptyRowError(matrix.user_id(empty));

  const int m = matrix.user_count();
  const int cols = matrix.column_count();
  std::vector<double> s(m, 1.0);
  std::vector<double> credit(cols), w(cols);

  for (int t = 0; t < config.iterations; ++t) {
    // Each user invests an equal share of their score in every answer.
    std::fill(credit.begin(), credit.end(), 0.0);
    for (int u = 0; u < m; ++u) {
      double share = s[u] / matrix.row_degree(u);
      for (std::int32_t c : matrix.row(u)) credit[c] += share;
    }

    if (pooled) {
      // Option scores share the item's grown credit proportionally.
      for (int i = 0; i < matrix.item_count(); ++i) {
        double denom = 0.0;
        for (std::int32_t c : matrix.item_columns(i))
          if (matrix.col_degree(c) > 0)
            denom += std::pow(credit[c], config.exponent);
        for (std::int32_t c : matrix.item_columns(i)) {
          if (matrix.col_degree(c) == 0) {
            w[c] = 0.0;
          } else {
            w[c] = denom > 0.0 ? credit[c] * std::pow(credit[c], config.exponent) / denom
                               : 0.0;
          }
        }
      }
    } else {
      for (int c = 0; c < cols; ++c)
        w[c] = matrix.col_degree(c) > 0 ? std::pow(credit[c], config.exponent) : 0.0;
    }

    // Returns flow back proportionally to each user's invested share.
    std::vector<double> next(m, 0.0);
    for (int u = 0; u < m; ++u) {
      double share = s[u] / matrix.row_degree(u);
      double acc = 0.0;
      for (std::int32_t c : matrix.row(u)) acc += w[c] * share / credit[c];
      next[u] = acc;
    }
    s = std::move(next);
  }

  RankResult out;
  out.score = make_score_vector(std::move(s));
  out.iterations = config.iterations;
  return out;
}

}  // namespace

RankResult rank_investment(const ResponseMatrix& matrix,
                           const InvestmentConfig& config) {
  return investment_family(matrix, config, false);
}

RankResult rank_pooled_investment(const ResponseMatrix& matrix,
                                  const InvestmentConfig& config) {
  return investment_family(matrix, config, true);
}

RankResult rank_true_answer(const ResponseMatrix& matrix,
                            const AnswerKey& key) {
  for (int i = 0; i < matrix.item_count(); ++i)
    if (!key.correct.contains(matrix.item_id(i)))
      throw MissingKeyError(matrix.item_id(i));

  std::vector<double> scores(matrix.user_count(), 0.0);
  for (int u = 0; u < matrix.user_count(); ++u) {
    int correct = 0;
    for (std::int32_t c : matrix.row(u)) {
      const ColumnInfo& info = matrix.column_info(c);
      if (key.correct.at(info.item) == info.option) ++correct;
    }
    scores[u] = correct;
  }

  RankResult out;
  out.score = make_score_vector(std::move(scores));
  return out;
}

namespace {

// Average per-item Shannon entropy of the option choices made by `users`,
// over the items at least one of them answered.
double group_answer_entropy(const ResponseMatrix& matrix,
                            std::span<const int> users) {
  std::vector<int> col_count(matrix.column_count(), 0);
  std::vector<int> item_total(matrix.item_count(), 0);
  for (int u : users) {
    for (std::int32_t c : matrix.row(u)) {
      ++col_count[c];
      ++item_total[matrix.item_of_column(c)];
    }
  }

  double total = 0.0;
  int answered_items = 0;
  for (int i = 0; i < matrix.item_count(); ++i) {
    if (item_total[i] == 0) continue;
    double entropy = 0.0;
    for (std::int32_t c : matrix.item_columns(i)) {
      if (col_count[c] == 0) continue;
      double p = static_cast<double>(col_count[c]) / item_total[i];
      entropy -= p * std::log(p);
    }
    total += entropy;
    ++answered_items;
  }
  return answered_items > 0 ? total / answered_items : 0.0;
}

}  // namespace

ScoreVector orient_by_decile_entropy(const ScoreVector& score,
                                     const ResponseMatrix& matrix) {
  const int m = matrix.user_count();
  if (m < 2)
    throw DimensionMismatchError("orientation needs at least 2 users");
  if (static_cast<int>(score.scores.size()) != m)
    throw DimensionMismatchError("score length must equal user count");

  const int decile = (m + 9) / 10;
  std::vector<int> top(score.ranking.begin(), score.ranking.begin() + decile);
  std::vector<int> bottom(score.ranking.end() - decile, score.ranking.end());

  const double top_entropy = group_answer_entropy(matrix, top);
  const double bottom_entropy = group_answer_entropy(matrix, bottom);
  if (bottom_entropy < top_entropy) {
    std::vector<double> flipped(score.scores);
    for (double& x : flipped) x = -x;
    return make_score_vector(std::move(flipped));
  }
  return score;
}

const std::vector<std::pair<std::string, Method>>& method_table() {
  static const std::vector<std::pair<std::string, Method>> table = {
      {"hnd-power", Method::HndPower},
      {"hnd-deflation", Method::HndDeflation},
      {"abh-power", Method::AbhPower},
      {"abh-dense", Method::AbhDense},
      {"hits", Method::Hits},
      {"truthfinder", Method::TruthFinder},
      {"investment", Method::Investment},
      {"pooledinv", Method::PooledInvestment},
      {"true-answer", Method::TrueAnswer},
  };
  return table;
}

Method parse_method(const std::string& name) {
  for (const auto& [id, method] : method_table())
    if (id == name) return method;
  throw ConfigInvalidError("unknown method: " + name);
}

std::string method_name(Method method) {
  for (const auto& [id, m] : method_table())
    if (m == method) return id;
  throw ConfigInvalidError("unknown method id");
}

bool method_needs_orientation(Method method) {
  switch (method) {
    case Method::HndPower:
    case Method::HndDeflation:
    case Method::AbhPower:
    case Method::AbhDense:
      return true;
    default:
      return false;
  }
}

RankResult run_method(Method method, const ResponseMatrix& matrix,
                      const PowerConfig& config, const AnswerKey* key) {
  switch (method) {
    case Method::HndPower:
      return rank_hnd_power(matrix, config);
    case Method::HndDeflation:
      return rank_hnd_deflation(matrix, config);
    case Method::AbhPower:
      return rank_abh_power(matrix, config);
    case Method::AbhDense:
      return rank_abh_fiedler_dense(matrix);
    case Method::Hits:
      return rank_hits(matrix, config);
    case Method::TruthFinder:
      return rank_truthfinder(matrix, config);
    case Method::Investment:
      return rank_investment(matrix);
    case Method::PooledInvestment:
      return rank_pooled_investment(matrix);
    case Method::TrueAnswer:
      if (key == nullptr)
        throw MissingKeyError(-1);
      return rank_true_answer(matrix, *key);
  }
  throw ConfigInvalidError("unknown method id");
}

}  // namespace abilityrank
