#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "abilityrank/eval.hpp"
#include "abilityrank/irt.hpp"
#include "abilityrank/rankers.hpp"
#include "abilityrank/response_matrix.hpp"

namespace abilityrank::io {

class IoError : public Error {
 public:
  using Error::Error;
};

// Round-trippable decimal rendering of a double.
std::string format_double(double x);

// responses.csv: header `user,item,option`, one answer per line.
void write_responses_csv(const std::filesystem::path& path,
                         const ResponseMatrix& matrix);
std::vector<ResponseRecord> read_responses_csv(const std::filesystem::path& path);

// abilities.csv: header `user,ability`, indexed by user id.
void write_abilities_csv(const std::filesystem::path& path,
                         std::span<const double> abilities);
std::vector<std::pair<std::int64_t, double>> read_abilities_csv(
    const std::filesystem::path& path);

// key.csv: header `item,correct_option`.
void write_key_csv(const std::filesystem::path& path, const AnswerKey& key);
AnswerKey read_key_csv(const std::filesystem::path& path);

// Ranking CSV: header `user,score,rank` with 1-based ranks, best first.
struct RankingRow {
  std::int64_t user;
  double score;
  int rank;
};
void write_ranking_csv(const std::filesystem::path& path,
                       const ResponseMatrix& matrix, const ScoreVector& score);
std::vector<RankingRow> read_ranking_csv(const std::filesystem::path& path);

nlohmann::json config_to_json(const GenConfig& config);
GenConfig config_from_json(const nlohmann::json& j);

// Writes responses.csv, abilities.csv, key.csv and config.json into `dir`.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

nlohmann::json bench_record_to_json(const BenchRecord& record);

// Reproducibility manifest placed next to every produced output.
void write_manifest(const std::filesystem::path& path,
                    const std::string& subcommand,
                    const nlohmann::json& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    std::uint64_t seed);

}  // namespace abilityrank::io
