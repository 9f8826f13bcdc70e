#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abilityrank/response_matrix.hpp"
#include "abilityrank/spectral.hpp"

namespace abilityrank {

// Scores plus the induced ranking. ranking[r] is the user index placed at
// rank r; users are ordered by descending score with ties broken by
// ascending user index.
struct ScoreVector {
  std::vector<double> scores;
  std::vector<int> ranking;
};

ScoreVector make_score_vector(std::vector<double> scores);

// Per-item correct option, keyed by original item id.
struct AnswerKey {
  std::map<std::int64_t, std::int64_t> correct;
};

struct RankResult {
  ScoreVector score;
  int iterations = 0;
  bool converged = true;
  // Converged unit difference vector for the difference-space power methods
  // (empty for the other rankers). Used by the stability diagnostics.
  std::vector<double> diff;
};

struct InvestmentConfig {
  double exponent = 1.2;
  int iterations = 10;
};

// Difference-space power method on S U T; scores are the cumulative sums of
// the converged difference vector. Recovers the unique consecutive-ones
// ordering when one exists.
RankResult rank_hnd_power(const ResponseMatrix& matrix,
                          const PowerConfig& config);

// Same ordering through Hotelling deflation: the second-largest eigenvector
// of the update matrix computed with two rounds of power iteration.
RankResult rank_hnd_deflation(const ResponseMatrix& matrix,
                              const PowerConfig& config);

// Power method on beta*I - S L T; scores are cumulative sums of the
// converged difference vector and order like the Laplacian Fiedler vector.
RankResult rank_abh_power(const ResponseMatrix& matrix,
                          const PowerConfig& config);

// Small-scale variant (m <= 64): scores are the Fiedler vector of the dense
// Laplacian. Throws TooLargeError beyond the limit and DisconnectedError
// when the second-smallest eigenvalue vanishes.
RankResult rank_abh_fiedler_dense(const ResponseMatrix& matrix);

// Classic hubs-and-authorities: power method on C C^T.
RankResult rank_hits(const ResponseMatrix& matrix, const PowerConfig& config);

// Averaging variant with probabilistic option scores; no normalization.
// tol acts on the L-infinity change of the user scores.
RankResult rank_truthfinder(const ResponseMatrix& matrix,
                            const PowerConfig& config);

RankResult rank_investment(const ResponseMatrix& matrix,
                           const InvestmentConfig& config = {1.2, 10});
RankResult rank_pooled_investment(const ResponseMatrix& matrix,
                                  const InvestmentConfig& config = {1.4, 10});

// Counts correctly answered items per the key.
RankResult rank_true_answer(const ResponseMatrix& matrix, const AnswerKey& key);

// Symmetry breaking: compares the average per-item answer entropy of the top
// and bottom score deciles and flips the ranking when the bottom decile
// looks more coherent. Exact ties keep the current orientation.
ScoreVector orient_by_decile_entropy(const ScoreVector& score,
                                     const ResponseMatrix& matrix);

enum class Method {
  HndPower,
  HndDeflation,
  AbhPower,
  AbhDense,
  Hits,
  TruthFinder,
  Investment,
  PooledInvestment,
  TrueAnswer,
};

const std::vector<std::pair<std::string, Method>>& method_table();
Method parse_method(const std::string& name);
std::string method_name(Method method);

// True for the spectral seriation methods whose sign is arbitrary; the
// remaining rankers produce already-oriented scores.
bool method_needs_orientation(Method method);

RankResult run_method(Method method, const ResponseMatrix& matrix,
                      const PowerConfig& config,
                      const AnswerKey* key = nullptr);

}  // namespace abilityrank
