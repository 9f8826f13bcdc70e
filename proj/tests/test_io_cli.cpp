#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "abilityrank/io.hpp"
#include "helpers.hpp"

using namespace abilityrank;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path dir =
      fs::temp_directory_path() / ("abilityrank_test_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(ABILITYRANK_CLI_PATH) + " " + args +
                    " >/dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("responses round-trip through CSV") {
  fs::path dir = temp_dir();
  ResponseMatrix m = test::ex1();
  io::write_responses_csv(dir / "responses.csv", m);

  std::string text = slurp(dir / "responses.csv");
  CHECK(text.substr(0, 17) == "user,item,option\n");
  CHECK(text.find('\r') == std::string::npos);

  auto records = io::read_responses_csv(dir / "responses.csv");
  ResponseMatrix back = ResponseMatrix::from_records(records);
  CHECK(back.to_records() == m.to_records());
}

TEST_CASE("abilities, key and ranking files") {
  fs::path dir = temp_dir();
  std::vector<double> abilities = {0.25, 1.0 / 3.0, 0.99999999999999};
  io::write_abilities_csv(dir / "abilities.csv", abilities);
  auto back = io::read_abilities_csv(dir / "abilities.csv");
  REQUIRE(back.size() == 3);
  for (int u = 0; u < 3; ++u) {
    CHECK(back[u].first == u);
    CHECK(back[u].second == abilities[u]);  // exact round trip
  }

  AnswerKey key;
  key.correct[0] = 1;
  key.correct[5] = 2;
  io::write_key_csv(dir / "key.csv", key);
  AnswerKey key_back = io::read_key_csv(dir / "key.csv");
  CHECK(key_back.correct == key.correct);

  ScoreVector sv = make_score_vector({0.5, 2.5, 1.5});
  io::write_ranking_csv(dir / "r.csv", test::ex1(), sv);
  auto rows = io::read_ranking_csv(dir / "r.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].user == 1);
  CHECK(rows[0].score == 2.5);
  CHECK(rows[0].rank == 1);
  CHECK(rows[2].user == 0);
}

TEST_CASE("config json round-trips") {
  GenConfig config;
  config.model = GenModel::Bock;
  config.users = 12;
  config.seed = 987654321;
  config.p_answer = 0.4;
  GenConfig back = io::config_from_json(io::config_to_json(config));
  CHECK(back.model == config.model);
  CHECK(back.users == config.users);
  CHECK(back.seed == config.seed);
  CHECK(back.p_answer == config.p_answer);
}

TEST_CASE("cli pipeline: gen, rank, eval") {
  fs::path dir = temp_dir();
  std::string d = (dir / "d").string();

  REQUIRE(run_cli("gen --model samejima --users 40 --items 30 --options 3 "
                  "--seed 42 --out " + d) == 0);
  CHECK(fs::exists(dir / "d/responses.csv"));
  CHECK(fs::exists(dir / "d/abilities.csv"));
  CHECK(fs::exists(dir / "d/key.csv"));
  CHECK(fs::exists(dir / "d/config.json"));
  CHECK(fs::exists(dir / "d/manifest.json"));

  std::string r = (dir / "r.csv").string();
  REQUIRE(run_cli("rank --method hnd-power --input " + d + "/responses.csv "
                  "--out " + r + " --seed 0") == 0);
  auto rows = io::read_ranking_csv(r);
  CHECK(rows.size() == 40);
  CHECK(fs::exists(dir / "r.csv.manifest.json"));

  std::string e = (dir / "e.csv").string();
  REQUIRE(run_cli("eval --ranking " + r + " --abilities " + d +
                  "/abilities.csv --method hnd-power --seed 42 --out " + e) == 0);
  std::string eval_text = slurp(e);
  CHECK(eval_text.find("method,seed,spearman,displacement") == 0);
  CHECK(eval_text.find("hnd-power,42,") != std::string::npos);

  SUBCASE("true-answer needs a key") {
    std::string r2 = (dir / "r2.csv").string();
    CHECK(run_cli("rank --method true-answer --input " + d +
                  "/responses.csv --out " + r2) == 5);
    CHECK(run_cli("rank --method true-answer --key " + d + "/key.csv "
                  "--input " + d + "/responses.csv --out " + r2) == 0);
  }
}

TEST_CASE("cli determinism: identical flags produce identical bytes") {
  fs::path dir = temp_dir();
  std::string d1 = (dir / "a").string(), d2 = (dir / "b").string();
  std::string args = "gen --model grm --users 25 --items 20 --options 4 "
                     "--p-answer 0.7 --seed 7 --out ";
  REQUIRE(run_cli(args + d1) == 0);
  REQUIRE(run_cli(args + d2) == 0);
  CHECK(slurp(d1 + "/responses.csv") == slurp(d2 + "/responses.csv"));
  CHECK(slurp(d1 + "/abilities.csv") == slurp(d2 + "/abilities.csv"));
  CHECK(slurp(d1 + "/key.csv") == slurp(d2 + "/key.csv"));

  std::string r1 = (dir / "r1.csv").string(), r2 = (dir / "r2.csv").string();
  REQUIRE(run_cli("rank --method abh-power --input " + d1 +
                  "/responses.csv --seed 3 --out " + r1) == 0);
  REQUIRE(run_cli("rank --method abh-power --input " + d2 +
                  "/responses.csv --seed 3 --out " + r2) == 0);
  CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("cli error exit codes") {
  fs::path dir = temp_dir();

  SUBCASE("invalid flags exit 2") {
    CHECK(run_cli("gen --model nonsense --out " + (dir / "x").string()) == 2);
    CHECK(run_cli("rank --method hnd-power") == 2);
    CHECK(run_cli("frobnicate") == 2);
  }
  SUBCASE("unreadable input exits 3") {
    CHECK(run_cli("rank --method hnd-power --input " +
                  (dir / "missing.csv").string() + " --out " +
                  (dir / "r.csv").string()) == 3);
  }
  SUBCASE("disconnected input exits 4 unless the flag is given") {
    // Two disjoint blocks of users.
    std::vector<ResponseRecord> records;
    for (const auto& r : test::ex1_records()) {
      records.push_back(r);
      records.push_back({r.user + 3, r.item + 2, r.option});
    }
    io::write_responses_csv(dir / "disc.csv",
                            ResponseMatrix::from_records(records));
    std::string base = "rank --method hnd-power --input " +
                       (dir / "disc.csv").string() + " --out " +
                       (dir / "rd.csv").string();
    CHECK(run_cli(base) == 4);
    CHECK(run_cli(base + " --largest-component") == 0);
    auto rows = io::read_ranking_csv(dir / "rd.csv");
    CHECK(rows.size() == 3);
  }
  SUBCASE("eval dimension mismatch exits 6") {
    std::string d = (dir / "d").string();
    REQUIRE(run_cli("gen --model samejima --users 10 --items 8 --seed 1 "
                    "--out " + d) == 0);
    std::string r = (dir / "r.csv").string();
    REQUIRE(run_cli("rank --method hits --input " + d + "/responses.csv "
                    "--out " + r) == 0);
    io::write_abilities_csv(dir / "short.csv", std::vector<double>{0.1, 0.2});
    CHECK(run_cli("eval --ranking " + r + " --abilities " +
                  (dir / "short.csv").string() + " --out " +
                  (dir / "e.csv").string()) == 6);
  }
}

TEST_CASE("cli bench emits one json line per cell") {
  fs::path dir = temp_dir();
  std::string out = (dir / "bench.jsonl").string();
  REQUIRE(run_cli("bench --methods hnd-power,hits --users 30,60 --items 10 "
                  "--repeats 2 --seeds 5 --out " + out) == 0);
  std::ifstream in(out);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("method"));
    CHECK(j.contains("m"));
    CHECK(j.contains("iterations"));
    CHECK(j.contains("wall_ms"));
    CHECK(j["n"] == 10);
    ++count;
  }
  CHECK(count == 4);

  SUBCASE("worker pool covers the same cells") {
    std::string out2 = (dir / "bench2.jsonl").string();
    REQUIRE(run_cli("bench --methods hnd-power,hits --users 30,60 --items 10 "
                    "--repeats 2 --seeds 5 --jobs 2 --out " + out2) == 0);
    std::ifstream in2(out2);
    int count2 = 0;
    while (std::getline(in2, line)) ++count2;
    CHECK(count2 == 4);
  }
}

TEST_CASE("cli eval reports displacement between two rankings") {
  fs::path dir = temp_dir();
  std::string d = (dir / "d").string();
  REQUIRE(run_cli("gen --model samejima --users 30 --items 20 --seed 9 "
                  "--out " + d) == 0);
  std::string r1 = (dir / "r1.csv").string(), r2 = (dir / "r2.csv").string();
  REQUIRE(run_cli("rank --method hnd-power --input " + d + "/responses.csv "
                  "--seed 1 --out " + r1) == 0);
  REQUIRE(run_cli("rank --method hits --input " + d + "/responses.csv "
                  "--seed 2 --out " + r2) == 0);
  std::string e = (dir / "e.csv").string();
  REQUIRE(run_cli("eval --ranking " + r1 + " --ranking2 " + r2 +
                  " --abilities " + d + "/abilities.csv --method pair "
                  "--out " + e) == 0);
  std::string text = slurp(e);
  auto last_comma = text.find_last_of(',');
  double displacement = std::stod(text.substr(last_comma + 1));
  CHECK(displacement >= 0.0);
  CHECK(displacement <= 1.0);
}
