#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abilityrank/rankers.hpp"
#include "abilityrank/response_matrix.hpp"

namespace abilityrank {

// Logistic function.
double sigmoid(double x);

enum class BinaryModel { OnePL, TwoPL, Glad, ThreePL };

struct BinaryItemParams {
  double a = 1.0;  // discrimination, >= 0
  double b = 0.0;  // difficulty
  double c = 0.0;  // guessing floor, in [0, 1)
};

// Probability of a correct answer for ability theta.
double prob_binary(BinaryModel model, const BinaryItemParams& params,
                   double theta);

enum class PolytomousModel { Grm, Bock, Samejima };

// Parameters of one polytomous item. Which fields apply depends on `model`:
// cumulative-logistic items use a shared discrimination plus increasing
// thresholds, the multinomial models use per-option slopes and intercepts,
// and the guessing variant adds a dummy option.
struct PolytomousItemParams {
  PolytomousModel model = PolytomousModel::Grm;

  double discrimination = 1.0;      // Grm
  std::vector<double> thresholds;   // Grm: k-1 strictly increasing values

  std::vector<double> slopes;       // Bock/Samejima: k real options
  std::vector<double> intercepts;   // Bock/Samejima: k real options
  double dummy_slope = 0.0;         // Samejima
  double dummy_intercept = 0.0;     // Samejima

  int option_count() const;
};

// Probability distribution over the k real options; entries are
// non-negative and sum to 1. Throws ThresholdOrderError for non-increasing
// thresholds.
std::vector<double> prob_polytomous(const PolytomousItemParams& params,
                                    double theta);

enum class GenModel { Grm, Bock, Samejima, C1p, OnePL, TwoPL, ThreePL, Glad };

GenModel parse_gen_model(const std::string& name);
std::string gen_model_name(GenModel model);
bool gen_model_is_binary(GenModel model);

struct GenConfig {
  GenModel model = GenModel::Samejima;
  int users = 100;
  int items = 100;
  int options = 3;
  double ability_min = 0.0;
  double ability_max = 1.0;
  double difficulty_min = -0.5;
  double difficulty_max = 0.5;
  double discrimination_min = 0.0;
  double discrimination_max = 10.0;
  double p_answer = 1.0;
  // Guessing floor for the 3PL generator; a negative value means 1/options.
  double guessing = -1.0;
  // Draw cumulative-model discriminations from [0, 2*max/(k+1)] so average
  // discriminations are comparable with the multinomial models.
  bool grm_rescale_discrimination = false;
  std::uint64_t seed = 0;
};

struct Dataset {
  ResponseMatrix responses;
  std::vector<double> abilities;  // indexed by user id
  AnswerKey key;
  GenConfig config;
};

// Seeded synthetic dataset: abilities and item parameters drawn from the
// configured ranges, each (user, item) answered with probability p_answer.
Dataset sample_dataset(const GenConfig& config);

// Deterministic consistent-responses dataset: the cumulative model in its
// step-function limit. Every user answers every item; the result is a
// pre-P matrix by construction. A tenth of the users get abilities in the
// lower half of [0,1] and the rest in the upper half so the two ends of the
// ordering are distinguishable.
Dataset generate_c1p(const GenConfig& config);

// The abilities and item parameters generate_c1p draws for a given config
// (same seed, same draws). Exposed so tests can replay the instance through
// the probabilistic response functions.
struct C1pInstance {
  std::vector<double> abilities;
  std::vector<PolytomousItemParams> items;  // Grm items, thresholds in [0,1]
};
C1pInstance draw_c1p_instance(const GenConfig& config);

// Samples responses for explicit item parameters and abilities.
Dataset sample_polytomous(const std::vector<PolytomousItemParams>& items,
                          std::span<const double> abilities, double p_answer,
                          std::uint64_t seed);

}  // namespace abilityrank
