#include "abilityrank/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "abilityrank/version.hpp"

namespace abilityrank::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::int64_t parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("invalid integer '" + s + "' in " + context);
  }
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("invalid number '" + s + "' in " + context);
  }
}

void expect_header(const std::vector<std::string>& lines,
                   const std::string& header,
                   const std::filesystem::path& path) {
  if (lines.empty() || lines.front() != header)
    throw IoError(path.string() + ": expected header '" + header + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_responses_csv(const std::filesystem::path& path,
                         const ResponseMatrix& matrix) {
  auto out = open_out(path);
  out << "user,item,option\n";
  for (const ResponseRecord& r : matrix.to_records())
    out << r.user << ',' << r.item << ',' << r.option << '\n';
}

std::vector<ResponseRecord> read_responses_csv(
    const std::filesystem::path& path) {
  auto lines = read_lines(path);
  expect_header(lines, "user,item,option", path);
  std::vector<ResponseRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv(lines[i]);
    if (fields.size() != 3)
      throw IoError(path.string() + ": malformed line '" + lines[i] + "'");
    records.push_back({parse_int(fields[0], path.string()),
                       parse_int(fields[1], path.string()),
                       parse_int(fields[2], path.string())});
  }
  return records;
}

void write_abilities_csv(const std::filesystem::path& path,
                         std::span<const double> abilities) {
  auto out = open_out(path);
  out << "user,ability\n";
  for (std::size_t u = 0; u < abilities.size(); ++u)
    out << u << ',' << format_double(abilities[u]) << '\n';
}

std::vector<std::pair<std::int64_t, double>> read_abilities_csv(
    const std::filesystem::path& path) {
  auto lines = read_lines(path);
  expect_header(lines, "user,ability", path);
  std::vector<std::pair<std::int64_t, double>> abilities;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv(lines[i]);
    if (fields.size() != 2)
      throw IoError(path.string() + ": malformed line '" + lines[i] + "'");
    abilities.emplace_back(parse_int(fields[0], path.string()),
                           parse_double(fields[1], path.string()));
  }
  return abilities;
}

void write_key_csv(const std::filesystem::path& path, const AnswerKey& key) {
  auto out = open_out(path);
  out << "item,correct_option\n";
  for (const auto& [item, option] : key.correct)
    out << item << ',' << option << '\n';
}

AnswerKey read_key_csv(const std::filesystem::path& path) {
  auto lines = read_lines(path);
  expect_header(lines, "item,correct_option", path);
  AnswerKey key;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv(lines[i]);
    if (fields.size() != 2)
      throw IoError(path.string() + ": malformed line '" + lines[i] + "'");
    key.correct[parse_int(fields[0], path.string())] =
        parse_int(fields[1], path.string());
  }
  return key;
}

void write_ranking_csv(const std::filesystem::path& path,
                       const ResponseMatrix& matrix, const ScoreVector& score) {
  auto out = open_out(path);
  out << "user,score,rank\n";
  for (std::size_t r = 0; r < score.ranking.size(); ++r) {
    int u = score.ranking[r];
    out << matrix.user_id(u) << ',' << format_double(score.scores[u]) << ','
        << r + 1 << '\n';
  }
}

std::vector<RankingRow> read_ranking_csv(const std::filesystem::path& path) {
  auto lines = read_lines(path);
  expect_header(lines, "user,score,rank", path);
  std::vector<RankingRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv(lines[i]);
    if (fields.size() != 3)
      throw IoError(path.string() + ": malformed line '" + lines[i] + "'");
    rows.push_back({parse_int(fields[0], path.string()),
                    parse_double(fields[1], path.string()),
                    static_cast<int>(parse_int(fields[2], path.string()))});
  }
  return rows;
}

nlohmann::json config_to_json(const GenConfig& config) {
  return nlohmann::json{
      {"model", gen_model_name(config.model)},
      {"users", config.users},
      {"items", config.items},
      {"options", config.options},
      {"ability_range", {config.ability_min, config.ability_max}},
      {"difficulty_range", {config.difficulty_min, config.difficulty_max}},
      {"discrimination_range",
       {config.discrimination_min, config.discrimination_max}},
      {"p_answer", config.p_answer},
      {"guessing", config.guessing},
      {"grm_rescale_discrimination", config.grm_rescale_discrimination},
      {"seed", config.seed},
  };
}

GenConfig config_from_json(const nlohmann::json& j) {
  GenConfig config;
  config.model = parse_gen_model(j.at("model").get<std::string>());
  config.users = j.at("users").get<int>();
  config.items = j.at("items").get<int>();
  config.options = j.at("options").get<int>();
  config.ability_min = j.at("ability_range")[0].get<double>();
  config.ability_max = j.at("ability_range")[1].get<double>();
  config.difficulty_min = j.at("difficulty_range")[0].get<double>();
  config.difficulty_max = j.at("difficulty_range")[1].get<double>();
  config.discrimination_min = j.at("discrimination_range")[0].get<double>();
  config.discrimination_max = j.at("discrimination_range")[1].get<double>();
  config.p_answer = j.at("p_answer").get<double>();
  config.guessing = j.value("guessing", -1.0);
  config.grm_rescale_discrimination =
      j.value("grm_rescale_discrimination", false);
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::filesystem::create_directories(dir);
  write_responses_csv(dir / "responses.csv", dataset.responses);
  write_abilities_csv(dir / "abilities.csv", dataset.abilities);
  write_key_csv(dir / "key.csv", dataset.key);
  auto out = open_out(dir / "config.json");
  out << config_to_json(dataset.config).dump(2) << '\n';
}

nlohmann::json bench_record_to_json(const BenchRecord& record) {
  return nlohmann::json{
      {"method", record.method}, {"m", record.m},
      {"n", record.n},           {"k", record.k},
      {"seed", record.seed},     {"iterations", record.iterations},
      {"wall_ms", record.wall_ms},
  };
}

void write_manifest(const std::filesystem::path& path,
                    const std::string& subcommand,
                    const nlohmann::json& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    std::uint64_t seed) {
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

  nlohmann::json manifest{
      {"subcommand", subcommand}, {"config", config}, {"inputs", inputs},
      {"outputs", outputs},       {"seed", seed},     {"tool_version", kVersion},
      {"timestamp", stamp},
  };
  auto out = open_out(path);
  out << manifest.dump(2) << '\n';
}

}  // namespace abilityrank::io
