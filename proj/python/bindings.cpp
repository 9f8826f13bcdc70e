#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abilityrank/c1p.hpp"
#include "abilityrank/eval.hpp"
#include "abilityrank/irt.hpp"
#include "abilityrank/kernels.hpp"
#include "abilityrank/rankers.hpp"
#include "abilityrank/response_matrix.hpp"
#include "abilityrank/version.hpp"

namespace py = pybind11;
using namespace abilityrank;

namespace {

ResponseMatrix matrix_from_tuples(
    const std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>&
        tuples,
    std::optional<std::tuple<int, int, int>> shape) {
  std::vector<ResponseRecord> records;
  records.reserve(tuples.size());
  for (const auto& [u, i, h] : tuples) records.push_back({u, i, h});
  if (shape) {
    auto [users, items, options] = *shape;
    return ResponseMatrix::from_records(records, users, items, options);
  }
  return ResponseMatrix::from_records(records);
}

GenConfig config_from_kwargs(const std::string& model, int users, int items,
                             int options, double p_answer, std::uint64_t seed,
                             std::pair<double, double> ability_range,
                             std::pair<double, double> difficulty_range,
                             std::pair<double, double> discrimination_range) {
  GenConfig config;
  config.model = parse_gen_model(model);
  config.users = users;
  config.items = items;
  config.options = options;
  config.p_answer = p_answer;
  config.seed = seed;
  config.ability_min = ability_range.first;
  config.ability_max = ability_range.second;
  config.difficulty_min = difficulty_range.first;
  config.difficulty_max = difficulty_range.second;
  config.discrimination_min = discrimination_range.first;
  config.discrimination_max = discrimination_range.second;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ability ranking from heterogeneous multiple-choice responses";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "AbilityRankError", PyExc_RuntimeError);

  py::class_<ResponseMatrix>(m, "ResponseMatrix")
      .def_static("from_records", &matrix_from_tuples, py::arg("records"),
                  py::arg("shape") = std::nullopt,
                  "Build from (user, item, option) triples; optional shape "
                  "(users, items, options) declares unanswered ids")
      .def_property_readonly("users", &ResponseMatrix::user_count)
      .def_property_readonly("items", &ResponseMatrix::item_count)
      .def_property_readonly("columns", &ResponseMatrix::column_count)
      .def_property_readonly("nnz", &ResponseMatrix::nnz)
      .def("drop_empty_columns", &ResponseMatrix::drop_empty_columns)
      .def("pad_equal_row_sums", &ResponseMatrix::pad_equal_row_sums)
      .def("connected_components", &ResponseMatrix::connected_components)
      .def("to_records", [](const ResponseMatrix& m) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
        for (const auto& r : m.to_records())
          out.emplace_back(r.user, r.item, r.option);
        return out;
      });

  py::class_<ScoreVector>(m, "ScoreVector")
      .def_readonly("scores", &ScoreVector::scores)
      .def_readonly("ranking", &ScoreVector::ranking);

  py::class_<RankResult>(m, "RankResult")
      .def_property_readonly("scores",
                             [](const RankResult& r) { return r.score.scores; })
      .def_property_readonly(
          "ranking", [](const RankResult& r) { return r.score.ranking; })
      .def_readonly("iterations", &RankResult::iterations)
      .def_readonly("converged", &RankResult::converged)
      .def_readonly("diff", &RankResult::diff);

  m.def(
      "rank",
      [](const ResponseMatrix& matrix, const std::string& method,
         std::uint64_t seed, double tol, int max_iter,
         std::optional<std::map<std::int64_t, std::int64_t>> key, bool orient) {
        Method id = parse_method(method);
        AnswerKey answer_key;
        if (key) answer_key.correct = *key;
        PowerConfig config{tol, max_iter, seed};
        RankResult result =
            run_method(id, matrix, config, key ? &answer_key : nullptr);
        if (orient && method_needs_orientation(id))
          result.score = orient_by_decile_entropy(result.score, matrix);
        return result;
      },
      py::arg("matrix"), py::arg("method") = "hnd-power", py::arg("seed") = 0,
      py::arg("tol") = 1e-5, py::arg("max_iter") = 1000,
      py::arg("key") = std::nullopt, py::arg("orient") = true,
      "Run a ranking method; spectral methods are entropy-oriented unless "
      "orient=False");

  m.def("methods", [] {
    std::vector<std::string> names;
    for (const auto& [name, method] : method_table()) names.push_back(name);
    return names;
  });

  m.def(
      "u_matvec",
      [](const ResponseMatrix& m, const std::vector<double>& s) {
        return u_matvec(m, s);
      },
      py::arg("matrix"), py::arg("s"));
  m.def(
      "udiff_matvec",
      [](const ResponseMatrix& m, const std::vector<double>& d) {
        return udiff_matvec(m, d);
      },
      py::arg("matrix"), py::arg("d"));
  m.def(
      "abh_shifted_matvec",
      [](const ResponseMatrix& m, const std::vector<double>& d, double beta) {
        return abh_shifted_matvec(m, d, beta);
      },
      py::arg("matrix"), py::arg("d"), py::arg("beta"));
  m.def("abh_beta", &abh_beta, py::arg("matrix"));

  m.def(
      "is_p_matrix",
      [](const ResponseMatrix& m, const std::vector<int>& order) {
        return is_p_matrix(m, order);
      },
      py::arg("matrix"), py::arg("order"));
  m.def(
      "brute_force_c1p_order",
      [](const ResponseMatrix& m)
          -> std::optional<std::pair<std::vector<int>, std::uint64_t>> {
        auto cert = brute_force_c1p_order(m);
        if (!cert) return std::nullopt;
        return std::make_pair(cert->permutation, cert->certifying_count);
      },
      py::arg("matrix"),
      "Lexicographically first certifying permutation and the count of "
      "certifying permutations, or None");

  m.def(
      "prob_binary",
      [](const std::string& model, double a, double b, double c, double theta) {
        BinaryModel id;
        if (model == "1pl") id = BinaryModel::OnePL;
        else if (model == "2pl") id = BinaryModel::TwoPL;
        else if (model == "glad") id = BinaryModel::Glad;
        else if (model == "3pl") id = BinaryModel::ThreePL;
        else throw ConfigInvalidError("unknown binary model: " + model);
        return prob_binary(id, {a, b, c}, theta);
      },
      py::arg("model"), py::arg("a"), py::arg("b"), py::arg("c"),
      py::arg("theta"));

  m.def(
      "prob_polytomous",
      [](const std::string& model, double theta, double discrimination,
         const std::vector<double>& thresholds,
         const std::vector<double>& slopes,
         const std::vector<double>& intercepts) {
        PolytomousItemParams item;
        if (model == "grm") {
          item.model = PolytomousModel::Grm;
          item.discrimination = discrimination;
          item.thresholds = thresholds;
        } else if (model == "bock" || model == "samejima") {
          item.model = model == "bock" ? PolytomousModel::Bock
                                       : PolytomousModel::Samejima;
          item.slopes = slopes;
          item.intercepts = intercepts;
        } else {
          throw ConfigInvalidError("unknown polytomous model: " + model);
        }
        return prob_polytomous(item, theta);
      },
      py::arg("model"), py::arg("theta"), py::arg("discrimination") = 1.0,
      py::arg("thresholds") = std::vector<double>{},
      py::arg("slopes") = std::vector<double>{},
      py::arg("intercepts") = std::vector<double>{},
      "Option probability distribution; cumulative models take "
      "discrimination and thresholds, multinomial models take per-option "
      "slopes and intercepts (the guessing variant adds a zero dummy "
      "option)");

  m.def(
      "orient_by_decile_entropy",
      [](const std::vector<double>& scores, const ResponseMatrix& matrix) {
        return orient_by_decile_entropy(make_score_vector(scores), matrix);
      },
      py::arg("scores"), py::arg("matrix"));

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("responses", &Dataset::responses)
      .def_readonly("abilities", &Dataset::abilities)
      .def_property_readonly(
          "key", [](const Dataset& d) { return d.key.correct; });

  m.def("sample_dataset",
        [](const std::string& model, int users, int items, int options,
           double p_answer, std::uint64_t seed,
           std::pair<double, double> ability_range,
           std::pair<double, double> difficulty_range,
           std::pair<double, double> discrimination_range) {
          return sample_dataset(config_from_kwargs(
              model, users, items, options, p_answer, seed, ability_range,
              difficulty_range, discrimination_range));
        },
        py::arg("model") = "samejima", py::arg("users") = 100,
        py::arg("items") = 100, py::arg("options") = 3,
        py::arg("p_answer") = 1.0, py::arg("seed") = 0,
        py::arg("ability_range") = std::pair<double, double>{0.0, 1.0},
        py::arg("difficulty_range") = std::pair<double, double>{-0.5, 0.5},
        py::arg("discrimination_range") = std::pair<double, double>{0.0, 10.0});

  m.def("generate_c1p",
        [](int users, int items, int options, std::uint64_t seed) {
          GenConfig config;
          config.model = GenModel::C1p;
          config.users = users;
          config.items = items;
          config.options = options;
          config.seed = seed;
          return generate_c1p(config);
        },
        py::arg("users") = 100, py::arg("items") = 100, py::arg("options") = 3,
        py::arg("seed") = 0);

  m.def(
      "spearman",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return spearman(x, y);
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "rank_displacement",
      [](const std::vector<int>& p, const std::vector<int>& q) {
        return rank_displacement(p, q);
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "eigvec_variance",
      [](const std::vector<double>& v) { return eigvec_variance(v); },
      py::arg("v"));
}
