#include "abilityrank/irt.hpp"

#include <algorithm>
#include <cmath>

#include "abilityrank/rng.hpp"

namespace abilityrank {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double prob_binary(BinaryModel model, const BinaryItemParams& params,
                   double theta) {
  switch (model) {
    case BinaryModel::OnePL:
      return sigmoid(theta - params.b);
    case BinaryModel::TwoPL:
      return sigmoid(params.a * (theta - params.b));
    case BinaryModel::Glad:
      return sigmoid(params.a * theta);
    case BinaryModel::ThreePL:
      return params.c + (1.0 - params.c) * sigmoid(params.a * (theta - params.b));
  }
  throw ConfigInvalidError("unknown binary model");
}

int PolytomousItemParams::option_count() const {
  if (model == PolytomousModel::Grm)
    return static_cast<int>(thresholds.size()) + 1;
  return static_cast<int>(slopes.size());
}

namespace {

std::vector<double> grm_distribution(const PolytomousItemParams& p,
                                     double theta) {
  const int k = static_cast<int>(p.thresholds.size()) + 1;
  for (std::size_t i = 0; i + 1 < p.thresholds.size(); ++i)
    if (!(p.thresholds[i] < p.thresholds[i + 1]))
      throw ThresholdOrderError("thresholds must be strictly increasing");

  // Cumulative pass probabilities, with the trivial first and last steps.
  std::vector<double> cum(k + 1);
  cum[0] = 1.0;
  cum[k] = 0.0;
  for (int h = 1; h < k; ++h)
    cum[h] = sigmoid(p.discrimination * (theta - p.thresholds[h - 1]));

  std::vector<double> dist(k);
  for (int h = 0; h < k; ++h) dist[h] = cum[h] - cum[h + 1];
  return dist;
}

std::vector<double> bock_distribution(const PolytomousItemParams& p,
                                      double theta) {
  const int k = static_cast<int>(p.slopes.size());
  if (k < 2 || p.intercepts.size() != p.slopes.size())
    throw ConfigInvalidError("multinomial item needs k >= 2 slope/intercept pairs");

  std::vector<double> logits(k);
  double zmax = -std::numeric_limits<double>::infinity();
  for (int h = 0; h < k; ++h) {
    logits[h] = p.slopes[h] * theta + p.intercepts[h];
    zmax = std::max(zmax, logits[h]);
  }
  double denom = 0.0;
  for (int h = 0; h < k; ++h) {
    logits[h] = std::exp(logits[h] - zmax);
    denom += logits[h];
  }
  for (double& x : logits) x /= denom;
  return logits;
}

std::vector<double> samejima_distribution(const PolytomousItemParams& p,
                                          double theta) {
  const int k = static_cast<int>(p.slopes.size());
  if (k < 2 || p.intercepts.size() != p.slopes.size())
    throw ConfigInvalidError("multinomial item needs k >= 2 slope/intercept pairs");

  // The dummy option's mass is split evenly across the real options.
  const double dummy_logit = p.dummy_slope * theta + p.dummy_intercept;
  std::vector<double> logits(k);
  double zmax = dummy_logit;
  for (int h = 0; h < k; ++h) {
    logits[h] = p.slopes[h] * theta + p.intercepts[h];
    zmax = std::max(zmax, logits[h]);
  }
  const double dummy = std::exp(dummy_logit - zmax);
  double denom = dummy;
  for (int h = 0; h < k; ++h) {
    logits[h] = std::exp(logits[h] - zmax);
    denom += logits[h];
  }
  std::vector<double> dist(k);
  for (int h = 0; h < k; ++h) dist[h] = (logits[h] + dummy / k) / denom;
  return dist;
}

}  // namespace

std::vector<double> prob_polytomous(const PolytomousItemParams& params,
                                    double theta) {
  switch (params.model) {
    case PolytomousModel::Grm:
      return grm_distribution(params, theta);
    case PolytomousModel::Bock:
      return bock_distribution(params, theta);
    case PolytomousModel::Samejima:
      return samejima_distribution(params, theta);
  }
  throw ConfigInvalidError("unknown polytomous model");
}

GenModel parse_gen_model(const std::string& name) {
  if (name == "grm") return GenModel::Grm;
  if (name == "bock") return GenModel::Bock;
  if (name == "samejima") return GenModel::Samejima;
  if (name == "c1p") return GenModel::C1p;
  if (name == "1pl") return GenModel::OnePL;
  if (name == "2pl") return GenModel::TwoPL;
  if (name == "3pl") return GenModel::ThreePL;
  if (name == "glad") return GenModel::Glad;
  throw ConfigInvalidError("unknown model: " + name);
}

std::string gen_model_name(GenModel model) {
  switch (model) {
    case GenModel::Grm: return "grm";
    case GenModel::Bock: return "bock";
    case GenModel::Samejima: return "samejima";
    case GenModel::C1p: return "c1p";
    case GenModel::OnePL: return "1pl";
    case GenModel::TwoPL: return "2pl";
    case GenModel::ThreePL: return "3pl";
    case GenModel::Glad: return "glad";
  }
  throw ConfigInvalidError("unknown model id");
}

bool gen_model_is_binary(GenModel model) {
  return model == GenModel::OnePL || model == GenModel::TwoPL ||
         model == GenModel::ThreePL || model == GenModel::Glad;
}

namespace {

void validate_config(const GenConfig& c) {
  if (c.users < 1 || c.items < 1) throw ConfigInvalidError("need users, items >= 1");
  if (c.options < 2) throw ConfigInvalidError("need at least 2 options");
  if (!(c.p_answer > 0.0 && c.p_answer <= 1.0))
    throw ConfigInvalidError("p_answer must be in (0, 1]");
  if (!(c.ability_min <= c.ability_max) ||
      !(c.difficulty_min <= c.difficulty_max) ||
      !(c.discrimination_min <= c.discrimination_max))
    throw ConfigInvalidError("parameter ranges must be proper intervals");
  if (gen_model_is_binary(c.model) && c.options != 2)
    throw ConfigInvalidError("binary models have exactly 2 options");
}

int sample_from_distribution(std::span<const double> dist, Rng& rng) {
  double x = rng.uniform01();
  double acc = 0.0;
  for (std::size_t h = 0; h < dist.size(); ++h) {
    acc += dist[h];
    if (x < acc) return static_cast<int>(h);
  }
  return static_cast<int>(dist.size()) - 1;
}

// k-1 strictly increasing draws from [lo, hi]; redrawn on the (measure-zero)
// chance of a tie.
std::vector<double> draw_thresholds(int k, double lo, double hi, Rng& rng) {
  std::vector<double> t(k - 1);
  while (true) {
    for (double& x : t) x = rng.uniform(lo, hi);
    std::sort(t.begin(), t.end());
    bool strict = true;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      if (t[i] == t[i + 1]) strict = false;
    if (strict) return t;
  }
}

PolytomousItemParams draw_item(const GenConfig& c, Rng& rng) {
  PolytomousItemParams item;
  switch (c.model) {
    case GenModel::Grm: {
      item.model = PolytomousModel::Grm;
      double amax = c.grm_rescale_discrimination
                        ? 2.0 * c.discrimination_max / (c.options + 1)
                        : c.discrimination_max;
      double amin = c.grm_rescale_discrimination
                        ? 2.0 * c.discrimination_min / (c.options + 1)
                        : c.discrimination_min;
      item.discrimination = rng.uniform(amin, amax);
      item.thresholds =
          draw_thresholds(c.options, c.difficulty_min, c.difficulty_max, rng);
      return item;
    }
    case GenModel::Bock:
    case GenModel::Samejima: {
      item.model = c.model == GenModel::Bock ? PolytomousModel::Bock
                                             : PolytomousModel::Samejima;
      item.slopes.resize(c.options);
      for (double& a : item.slopes)
        a = rng.uniform(c.discrimination_min, c.discrimination_max);
      std::sort(item.slopes.begin(), item.slopes.end());
      double difficulty = rng.uniform(c.difficulty_min, c.difficulty_max);
      item.intercepts.resize(c.options);
      for (int h = 0; h < c.options; ++h)
        item.intercepts[h] = -item.slopes[h] * difficulty;
      return item;
    }
    default:
      throw ConfigInvalidError("not a polytomous model");
  }
}

Dataset finish_dataset(const GenConfig& c, std::vector<ResponseRecord> records,
                       std::vector<double> abilities, AnswerKey key) {
  Dataset ds{ResponseMatrix::from_records(records, c.users, c.items, c.options),
             std::move(abilities), std::move(key), c};
  return ds;
}

}  // namespace

Dataset sample_dataset(const GenConfig& config) {
  validate_config(config);
  Rng rng(config.seed);

  std::vector<double> abilities(config.users);
  for (double& theta : abilities)
    theta = rng.uniform(config.ability_min, config.ability_max);

  AnswerKey key;
  std::vector<ResponseRecord> records;
  records.reserve(static_cast<std::size_t>(config.users) * config.items);

  if (gen_model_is_binary(config.model)) {
    BinaryModel model;
    switch (config.model) {
      case GenModel::OnePL: model = BinaryModel::OnePL; break;
      case GenModel::TwoPL: model = BinaryModel::TwoPL; break;
      case GenModel::Glad: model = BinaryModel::Glad; break;
      default: model = BinaryModel::ThreePL; break;
    }
    std::vector<BinaryItemParams> items(config.items);
    for (int i = 0; i < config.items; ++i) {
      items[i].a = rng.uniform(config.discrimination_min, config.discrimination_max);
      items[i].b = rng.uniform(config.difficulty_min, config.difficulty_max);
      items[i].c = config.model == GenModel::ThreePL
                       ? (config.guessing < 0.0 ? 1.0 / config.options
                                                : config.guessing)
                       : 0.0;
      key.correct[i] = 1;  // option 1 marks a correct answer
    }
    for (int u = 0; u < config.users; ++u) {
      for (int i = 0; i < config.items; ++i) {
        if (config.p_answer < 1.0 && rng.uniform01() >= config.p_answer) continue;
        double p = prob_binary(model, items[i], abilities[u]);
        std::int64_t option = rng.uniform01() < p ? 1 : 0;
        records.push_back({u, i, option});
      }
    }
    return finish_dataset(config, std::move(records), std::move(abilities),
                          std::move(key));
  }

  if (config.model == GenModel::C1p)
    throw ConfigInvalidError("use generate_c1p for consistent datasets");

  std::vector<PolytomousItemParams> items;
  items.reserve(config.items);
  for (int i = 0; i < config.items; ++i) {
    items.push_back(draw_item(config, rng));
    key.correct[i] = config.options - 1;  // ascending slopes: last is correct
  }

  for (int u = 0; u < config.users; ++u) {
    for (int i = 0; i < config.items; ++i) {
      if (config.p_answer < 1.0 && rng.uniform01() >= config.p_answer) continue;
      std::vector<double> dist = prob_polytomous(items[i], abilities[u]);
      records.push_back({u, i, sample_from_distribution(dist, rng)});
    }
  }
  return finish_dataset(config, std::move(records), std::move(abilities),
                        std::move(key));
}

C1pInstance draw_c1p_instance(const GenConfig& config) {
  validate_config(config);
  Rng rng(config.seed);

  C1pInstance instance;
  instance.abilities.resize(config.users);
  const int low_count = config.users / 10;
  for (int u = 0; u < config.users; ++u) {
    instance.abilities[u] =
        u < low_count ? rng.uniform(0.0, 0.5) : rng.uniform(0.5, 1.0);
  }
  instance.items.reserve(config.items);
  for (int i = 0; i < config.items; ++i) {
    PolytomousItemParams item;
    item.model = PolytomousModel::Grm;
    item.discrimination = 1.0;
    item.thresholds = draw_thresholds(config.options, 0.0, 1.0, rng);
    instance.items.push_back(std::move(item));
  }
  return instance;
}

Dataset generate_c1p(const GenConfig& config) {
  C1pInstance instance = draw_c1p_instance(config);

  // The echoed configuration reflects what this generator actually does:
  // everyone answers everything, abilities and thresholds live in [0, 1].
  GenConfig echo = config;
  echo.p_answer = 1.0;
  echo.ability_min = 0.0;
  echo.ability_max = 1.0;
  echo.difficulty_min = 0.0;
  echo.difficulty_max = 1.0;

  AnswerKey key;
  std::vector<ResponseRecord> records;
  records.reserve(static_cast<std::size_t>(config.users) * config.items);
  for (int i = 0; i < config.items; ++i) key.correct[i] = config.options - 1;

  for (int u = 0; u < config.users; ++u) {
    double theta = instance.abilities[u];
    for (int i = 0; i < config.items; ++i) {
      // Step-function limit: the option whose threshold interval holds theta.
      const auto& t = instance.items[i].thresholds;
      std::int64_t option = 0;
      while (option < static_cast<std::int64_t>(t.size()) && t[option] < theta)
        ++option;
      records.push_back({u, i, option});
    }
  }
  return {ResponseMatrix::from_records(records, config.users, config.items,
                                       config.options),
          std::move(instance.abilities), std::move(key), echo};
}

Dataset sample_polytomous(const std::vector<PolytomousItemParams>& items,
                          std::span<const double> abilities, double p_answer,
                          std::uint64_t seed) {
  if (items.empty() || abilities.empty())
    throw ConfigInvalidError("need at least one item and one user");
  if (!(p_answer > 0.0 && p_answer <= 1.0))
    throw ConfigInvalidError("p_answer must be in (0, 1]");

  const int k = items.front().option_count();
  for (const auto& item : items)
    if (item.option_count() != k)
      throw ConfigInvalidError("items must share the option count");

  Rng rng(seed);
  std::vector<ResponseRecord> records;
  AnswerKey key;
  for (std::size_t i = 0; i < items.size(); ++i)
    key.correct[static_cast<std::int64_t>(i)] = k - 1;

  for (std::size_t u = 0; u < abilities.size(); ++u) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (p_answer < 1.0 && rng.uniform01() >= p_answer) continue;
      std::vector<double> dist = prob_polytomous(items[i], abilities[u]);
      records.push_back({static_cast<std::int64_t>(u),
                         static_cast<std::int64_t>(i),
                         sample_from_distribution(dist, rng)});
    }
  }

  GenConfig config;
  config.users = static_cast<int>(abilities.size());
  config.items = static_cast<int>(items.size());
  config.options = k;
  config.p_answer = p_answer;
  config.seed = seed;
  return {ResponseMatrix::from_records(records, config.users, config.items, k),
          std::vector<double>(abilities.begin(), abilities.end()),
          std::move(key), config};
}

}  // namespace abilityrank
