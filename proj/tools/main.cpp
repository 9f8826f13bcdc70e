// Command-line front end: dataset generation, ranking, evaluation and
// benchmarking as reproducible pipelines.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "abilityrank/eval.hpp"
#include "abilityrank/io.hpp"
#include "abilityrank/irt.hpp"
#include "abilityrank/rankers.hpp"
#include "abilityrank/version.hpp"

namespace ar = abilityrank;
using nlohmann::json;

namespace {

constexpr int kExitBadFlags = 2;
constexpr int kExitIo = 3;
constexpr int kExitDisconnected = 4;
constexpr int kExitMissingKey = 5;
constexpr int kExitMismatch = 6;

struct GenFlags {
  std::string model = "samejima";
  ar::GenConfig config;
  std::string out;
};

int run_gen(const GenFlags& flags) {
  ar::GenConfig config = flags.config;
  config.model = ar::parse_gen_model(flags.model);

  ar::Dataset dataset = config.model == ar::GenModel::C1p
                            ? ar::generate_c1p(config)
                            : ar::sample_dataset(config);
  ar::io::write_dataset(flags.out, dataset);
  ar::io::write_manifest(
      std::filesystem::path(flags.out) / "manifest.json", "gen",
      ar::io::config_to_json(config), {},
      {flags.out + "/responses.csv", flags.out + "/abilities.csv",
       flags.out + "/key.csv", flags.out + "/config.json"},
      config.seed);
  std::cout << "wrote dataset to " << flags.out << "\n";
  return 0;
}

struct RankFlags {
  std::string method;
  std::string input;
  std::string out;
  std::string orient = "default";  // entropy | none | default
  std::string key_path;
  bool largest_component = false;
  std::uint64_t seed = 0;
  double tol = 1e-5;
  int max_iter = 1000;
};

int run_rank(const RankFlags& flags) {
  ar::Method method = ar::parse_method(flags.method);
  auto records = ar::io::read_responses_csv(flags.input);
  ar::ResponseMatrix matrix =
      ar::ResponseMatrix::from_records(records).drop_empty_columns();

  ar::AnswerKey key;
  if (method == ar::Method::TrueAnswer) {
    if (flags.key_path.empty())
      throw ar::MissingKeyError(-1);
    key = ar::io::read_key_csv(flags.key_path);
  }

  if (flags.largest_component) {
    auto components = matrix.connected_components();
    if (components.size() > 1)
      matrix = matrix.restrict_users(components.front()).drop_empty_columns();
  }

  ar::PowerConfig config{flags.tol, flags.max_iter, flags.seed};
  ar::RankResult result = ar::run_method(method, matrix, config, &key);

  bool orient = flags.orient == "entropy" ||
                (flags.orient == "default" && ar::method_needs_orientation(method));
  ar::ScoreVector score = orient
                              ? ar::orient_by_decile_entropy(result.score, matrix)
                              : result.score;

  ar::io::write_ranking_csv(flags.out, matrix, score);
  json config_echo{{"method", flags.method},
                   {"orient", orient ? "entropy" : "none"},
                   {"largest_component", flags.largest_component},
                   {"tol", flags.tol},
                   {"max_iter", flags.max_iter},
                   {"iterations", result.iterations},
                   {"converged", result.converged}};
  ar::io::write_manifest(flags.out + ".manifest.json", "rank", config_echo,
                         {flags.input}, {flags.out}, flags.seed);
  return 0;
}

struct EvalFlags {
  std::string ranking;
  std::string abilities;
  std::string ranking2;
  std::string method = "unknown";
  std::uint64_t seed = 0;
  std::string out;
};

int run_eval(const EvalFlags& flags) {
  auto rows = ar::io::read_ranking_csv(flags.ranking);
  auto ability_rows = ar::io::read_abilities_csv(flags.abilities);

  std::map<std::int64_t, double> ability_by_user(ability_rows.begin(),
                                                 ability_rows.end());
  if (rows.size() != ability_by_user.size()) {
    std::cerr << "error: ranking covers " << rows.size()
              << " users but abilities cover " << ability_by_user.size()
              << "\n";
    return kExitMismatch;
  }

  std::vector<double> scores, abilities;
  for (const auto& row : rows) {
    auto it = ability_by_user.find(row.user);
    if (it == ability_by_user.end()) {
      std::cerr << "error: user " << row.user << " missing from abilities\n";
      return kExitMismatch;
    }
    scores.push_back(row.score);
    abilities.push_back(it->second);
  }

  double rho = ar::spearman(scores, abilities);

  std::string displacement_field;
  if (!flags.ranking2.empty()) {
    auto rows2 = ar::io::read_ranking_csv(flags.ranking2);
    if (rows2.size() != rows.size()) {
      std::cerr << "error: rankings cover different user counts\n";
      return kExitMismatch;
    }
    // Convert both files to permutations over a shared dense user index.
    std::map<std::int64_t, int> index;
    for (const auto& row : rows) index.emplace(row.user, 0);
    int next = 0;
    for (auto& [user, idx] : index) idx = next++;
    std::vector<int> p, q;
    for (const auto& row : rows) p.push_back(index.at(row.user));
    for (const auto& row : rows2) {
      auto it = index.find(row.user);
      if (it == index.end()) {
        std::cerr << "error: user " << row.user << " missing from ranking\n";
        return kExitMismatch;
      }
      q.push_back(it->second);
    }
    displacement_field = ar::io::format_double(ar::rank_displacement(p, q));
  }

  std::ofstream out(flags.out, std::ios::binary);
  if (!out) throw ar::io::IoError("cannot write " + flags.out);
  out << "method,seed,spearman,displacement\n";
  out << flags.method << ',' << flags.seed << ',' << ar::io::format_double(rho)
      << ',' << displacement_field << '\n';

  json config_echo{{"method", flags.method}, {"ranking", flags.ranking},
                   {"abilities", flags.abilities}};
  if (!flags.ranking2.empty()) config_echo["ranking2"] = flags.ranking2;
  ar::io::write_manifest(flags.out + ".manifest.json", "eval", config_echo,
                         {flags.ranking, flags.abilities}, {flags.out},
                         flags.seed);
  std::cout << "spearman " << rho << "\n";
  return 0;
}

struct BenchFlags {
  std::vector<std::string> methods = {"hnd-power"};
  std::vector<int> users = {1000};
  std::vector<int> items = {100};
  int options = 3;
  std::string model = "samejima";
  std::vector<std::uint64_t> seeds = {0};
  int repeats = 5;
  double timeout_s = 1000.0;
  int jobs = 1;
  double tol = 1e-5;
  int max_iter = 1000;
  std::string out;
};

int run_bench(const BenchFlags& flags) {
  struct Cell {
    ar::Method method;
    int m, n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const std::string& name : flags.methods)
    for (int m : flags.users)
      for (int n : flags.items)
        for (std::uint64_t seed : flags.seeds)
          cells.push_back({ar::parse_method(name), m, n, seed});

  std::vector<json> lines(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      const Cell& cell = cells[idx];

      ar::GenConfig config;
      config.model = ar::parse_gen_model(flags.model);
      config.users = cell.m;
      config.items = cell.n;
      config.options = flags.options;
      config.seed = cell.seed;
      ar::Dataset dataset = config.model == ar::GenModel::C1p
                                ? ar::generate_c1p(config)
                                : ar::sample_dataset(config);

      ar::BenchConfig bench;
      bench.repeats = flags.repeats;
      bench.timeout_s = flags.timeout_s;
      bench.power = ar::PowerConfig{flags.tol, flags.max_iter, cell.seed};
      try {
        ar::BenchRecord record = ar::bench_run(cell.method, dataset, bench);
        lines[idx] = ar::io::bench_record_to_json(record);
      } catch (const ar::TimeoutError& e) {
        lines[idx] = json{{"method", ar::method_name(cell.method)},
                          {"m", cell.m},
                          {"n", cell.n},
                          {"k", flags.options},
                          {"seed", cell.seed},
                          {"timeout", true},
                          {"wall_ms", e.elapsed_ms}};
      }
    }
  };

  const int jobs = std::max(1, flags.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ofstream out(flags.out, std::ios::binary);
  if (!out) throw ar::io::IoError("cannot write " + flags.out);
  for (const json& line : lines) out << line.dump() << '\n';

  json config_echo{{"methods", flags.methods}, {"users", flags.users},
                   {"items", flags.items},     {"options", flags.options},
                   {"model", flags.model},     {"repeats", flags.repeats},
                   {"timeout_s", flags.timeout_s}};
  ar::io::write_manifest(flags.out + ".manifest.json", "bench", config_echo, {},
                         {flags.out},
                         flags.seeds.empty() ? 0 : flags.seeds.front());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank users by latent ability from multiple-choice responses"};
  app.set_version_flag("--version", ar::kVersion);
  app.require_subcommand(1);

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--model", gen.model,
                      "grm|bock|samejima|c1p|1pl|2pl|3pl|glad");
  gen_cmd->add_option("--users", gen.config.users);
  gen_cmd->add_option("--items", gen.config.items);
  gen_cmd->add_option("--options", gen.config.options);
  gen_cmd->add_option("--p-answer", gen.config.p_answer);
  gen_cmd->add_option("--guessing", gen.config.guessing);
  gen_cmd->add_option("--seed", gen.config.seed);
  gen_cmd
      ->add_option("--ability-range",
                   [&gen](const CLI::results_t& r) {
                     gen.config.ability_min = std::stod(r[0]);
                     gen.config.ability_max = std::stod(r[1]);
                     return true;
                   },
                   "lo hi")
      ->expected(2);
  gen_cmd
      ->add_option("--difficulty-range",
                   [&gen](const CLI::results_t& r) {
                     gen.config.difficulty_min = std::stod(r[0]);
                     gen.config.difficulty_max = std::stod(r[1]);
                     return true;
                   },
                   "lo hi")
      ->expected(2);
  gen_cmd
      ->add_option("--discrimination-range",
                   [&gen](const CLI::results_t& r) {
                     gen.config.discrimination_min = std::stod(r[0]);
                     gen.config.discrimination_max = std::stod(r[1]);
                     return true;
                   },
                   "lo hi")
      ->expected(2);
  gen_cmd->add_flag("--grm-rescale", gen.config.grm_rescale_discrimination,
                    "Rescale cumulative-model discriminations for "
                    "cross-model comparability");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  RankFlags rank;
  CLI::App* rank_cmd = app.add_subcommand("rank", "Rank users in a dataset");
  rank_cmd->add_option("--method", rank.method)->required();
  rank_cmd->add_option("--input", rank.input, "responses.csv")->required();
  rank_cmd->add_option("--out", rank.out, "Ranking CSV")->required();
  rank_cmd->add_option("--orient", rank.orient, "entropy|none")
      ->check(CLI::IsMember({"entropy", "none", "default"}));
  rank_cmd->add_option("--key", rank.key_path, "key.csv (true-answer)");
  rank_cmd->add_flag("--largest-component", rank.largest_component,
                     "Rank only the largest connected component");
  rank_cmd->add_option("--seed", rank.seed);
  rank_cmd->add_option("--tol", rank.tol);
  rank_cmd->add_option("--max-iter", rank.max_iter);

  EvalFlags eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Score a ranking against true abilities");
  eval_cmd->add_option("--ranking", eval.ranking)->required();
  eval_cmd->add_option("--abilities", eval.abilities)->required();
  eval_cmd->add_option("--ranking2", eval.ranking2,
                       "Second ranking for displacement");
  eval_cmd->add_option("--method", eval.method, "Label echoed to the output");
  eval_cmd->add_option("--seed", eval.seed, "Label echoed to the output");
  eval_cmd->add_option("--out", eval.out)->required();

  BenchFlags bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Timing sweeps");
  bench_cmd->add_option("--methods", bench.methods)->delimiter(',');
  bench_cmd->add_option("--users", bench.users)->delimiter(',');
  bench_cmd->add_option("--items", bench.items)->delimiter(',');
  bench_cmd->add_option("--options", bench.options);
  bench_cmd->add_option("--model", bench.model);
  bench_cmd->add_option("--seeds", bench.seeds)->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats);
  bench_cmd->add_option("--timeout-s", bench.timeout_s);
  bench_cmd->add_option("--jobs", bench.jobs);
  bench_cmd->add_option("--tol", bench.tol);
  bench_cmd->add_option("--max-iter", bench.max_iter);
  bench_cmd->add_option("--out", bench.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (rank_cmd->parsed()) return run_rank(rank);
    if (eval_cmd->parsed()) return run_eval(eval);
    if (bench_cmd->parsed()) return run_bench(bench);
    return kExitBadFlags;
  } catch (const ar::DisconnectedError& e) {
    std::cerr << "error: disconnected input; component sizes:";
    for (std::size_t s : e.component_sizes) std::cerr << ' ' << s;
    std::cerr << " (use --largest-component)\n";
    return kExitDisconnected;
  } catch (const ar::MissingKeyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingKey;
  } catch (const ar::DimensionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const ar::ConfigInvalidError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const ar::io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
