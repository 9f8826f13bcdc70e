#include <doctest.h>

#include <cmath>

#include "abilityrank/dense.hpp"
#include "abilityrank/kernels.hpp"
#include "abilityrank/spectral.hpp"
#include "helpers.hpp"

using namespace abilityrank;

namespace {

MatVec dense_op(Eigen::MatrixXd a) {
  return [a = std::move(a)](std::span<const double> x) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size());
    Eigen::VectorXd y = a * xv;
    return std::vector<double>(y.data(), y.data() + y.size());
  };
}

}  // namespace

TEST_CASE("power iteration finds the dominant axis of a diagonal operator") {
  Eigen::MatrixXd a(2, 2);
  a << 3, 0, 0, 1;
  SpectralResult res = power_iteration(dense_op(a), 2, {1e-10, 1000, 42});
  CHECK(res.converged);
  CHECK(res.eigenvalue == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(std::abs(res.eigenvector[0]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.eigenvector[0] > 0.0);  // canonical sign
  CHECK(std::abs(res.eigenvector[1]) < 1e-5);
}

TEST_CASE("power iteration on the EX1 operators") {
  ResponseMatrix m = test::ex1();
  SUBCASE("difference update operator") {
    MatVec op = [&m](std::span<const double> d) { return udiff_matvec(m, d); };
    SpectralResult res = power_iteration(op, 2, {1e-12, 2000, 7});
    CHECK(res.converged);
    CHECK(res.eigenvalue == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(res.eigenvector[0] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(res.eigenvector[1] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  }
  SUBCASE("shifted Laplacian difference operator") {
    MatVec op = [&m](std::span<const double> d) {
      return abh_shifted_matvec(m, d, 4.0);
    };
    SpectralResult res = power_iteration(op, 2, {1e-12, 2000, 7});
    CHECK(res.converged);
    CHECK(res.eigenvalue == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.eigenvector[0] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(res.eigenvector[1] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  }
}

TEST_CASE("power iteration error paths") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(power_iteration(dense_op(zero), 3, {1e-5, 100, 0}),
                  ZeroIterateError);
  CHECK_THROWS_AS(power_iteration(dense_op(zero), 0, {1e-5, 100, 0}),
                  DimensionMismatchError);
  CHECK_THROWS_AS(power_iteration(dense_op(zero), 3, {0.0, 100, 0}),
                  ConfigInvalidError);
  CHECK_THROWS_AS(power_iteration(dense_op(zero), 3, {1e-5, 0, 0}),
                  ConfigInvalidError);
}

TEST_CASE("hotelling deflation returns the second eigenpair") {
  SUBCASE("symmetric diagonal") {
    Eigen::MatrixXd a(3, 3);
    a << 3, 0, 0, 0, 2, 0, 0, 0, 1;
    std::vector<double> v1 = {1, 0, 0};
    SpectralResult res = second_eigvec_hotelling(dense_op(a), dense_op(a), v1,
                                                 {1e-10, 5000, 5});
    CHECK(res.eigenvalue == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(res.eigenvector[1]) == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("update matrix of EX1") {
    ResponseMatrix m = test::ex1();
    MatVec apply = [&m](std::span<const double> s) { return u_matvec(m, s); };
    MatVec apply_t = [&m](std::span<const double> s) { return ut_matvec(m, s); };
    std::vector<double> ones(3, 1.0 / std::sqrt(3.0));
    SpectralResult res =
        second_eigvec_hotelling(apply, apply_t, ones, {1e-12, 5000, 5});
    CHECK(res.eigenvalue == doctest::Approx(0.75).epsilon(1e-8));
    double inv = 1.0 / std::sqrt(2.0);
    CHECK(res.eigenvector[0] == doctest::Approx(inv).epsilon(1e-5));
    CHECK(res.eigenvector[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-5));
    CHECK(res.eigenvector[2] == doctest::Approx(-inv).epsilon(1e-5));
  }
  SUBCASE("orthogonal left/right dominant pair is rejected") {
    Eigen::MatrixXd a(2, 2);
    a << 3, 0, 0, 1;
    // Deliberately wrong dominant right eigenvector, orthogonal to the
    // dominant left one. The tight tolerance lets the left iterate shed the
    // off-axis component below the degeneracy threshold.
    std::vector<double> wrong = {0, 1};
    CHECK_THROWS_AS(second_eigvec_hotelling(dense_op(a), dense_op(a), wrong,
                                            {1e-15, 1000, 4}),
                    DegenerateDeflationError);
  }
  SUBCASE("exact rank-1 deflation annihilates the iterate") {
    Eigen::VectorXd v(3), u(3);
    v << 1, 2, 3;
    u << 2, 1, 1;
    double lambda = 5.0;
    Eigen::MatrixXd a = lambda * v * u.transpose() / u.dot(v);
    std::vector<double> v1 = {v(0), v(1), v(2)};
    CHECK_THROWS_AS(second_eigvec_hotelling(dense_op(a), dense_op(a.transpose()),
                                            v1, {1e-10, 100, 3}),
                    ZeroIterateError);
  }
}

TEST_CASE("dense eigendecomposition oracle") {
  SUBCASE("diagonal") {
    Eigen::MatrixXd a(2, 2);
    a << 5, 0, 0, 2;
    DenseEig eig = dense_eig_oracle(a);
    CHECK(eig.values[0] == doctest::Approx(5.0));
    CHECK(eig.values[1] == doctest::Approx(2.0));
  }
  SUBCASE("update matrix of EX1") {
    DenseEig eig = dense_eig_oracle(dense_update_matrix(test::ex1()));
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(eig.values[2] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("laplacian of EX1 has the path spectrum") {
    DenseEig eig = dense_eig_oracle(dense_laplacian(test::ex1()));
    CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
  SUBCASE("rejects non-square and oversized input") {
    CHECK_THROWS_AS(dense_eig_oracle(Eigen::MatrixXd::Zero(2, 3)),
                    NonSquareError);
    CHECK_THROWS_AS(dense_eig_oracle(Eigen::MatrixXd::Zero(65, 65)),
                    TooLargeError);
  }
}

TEST_CASE("power iteration matches the dense oracle on random PSD operators") {
  abilityrank::Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(31));
    Eigen::MatrixXd b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = rng.uniform(-1, 1);
    Eigen::MatrixXd a = b * b.transpose();

    DenseEig eig = dense_eig_oracle(a);
    if (eig.values[0] - eig.values[1] < 1e-3) continue;  // need a gap

    SpectralResult res =
        power_iteration(dense_op(a), d, {1e-10, 20000, 1234u + static_cast<unsigned>(trial)});
    CHECK(res.converged);
    CHECK(res.eigenvalue ==
          doctest::Approx(eig.values[0]).epsilon(1e-6));
  }
}

TEST_CASE("deflated second eigenvector is orthogonal to the first") {
  abilityrank::Rng rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 3 + static_cast<int>(rng.below(10));
    Eigen::MatrixXd b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = rng.uniform(-1, 1);
    Eigen::MatrixXd a = b * b.transpose();

    DenseEig eig = dense_eig_oracle(a);
    if (eig.values[0] - eig.values[1] < 1e-2 ||
        eig.values[1] - eig.values[2] < 1e-2)
      continue;

    Eigen::VectorXd v1d = eig.vectors.col(0);
    std::vector<double> v1(v1d.data(), v1d.data() + d);
    SpectralResult res = second_eigvec_hotelling(
        dense_op(a), dense_op(a.transpose()), v1, {1e-10, 50000, 77u + static_cast<unsigned>(trial)});

    double dot = 0.0;
    for (int i = 0; i < d; ++i) dot += res.eigenvector[i] * v1[i];
    CHECK(std::abs(dot) <= 1e-6);
  }
}

TEST_CASE("identical seeds give bit-identical results") {
  ResponseMatrix m = test::ex1();
  MatVec op = [&m](std::span<const double> d) { return udiff_matvec(m, d); };
  SpectralResult a = power_iteration(op, 2, {1e-8, 1000, 99});
  SpectralResult b = power_iteration(op, 2, {1e-8, 1000, 99});
  CHECK(a.eigenvector == b.eigenvector);
  CHECK(a.eigenvalue == b.eigenvalue);
  CHECK(a.iterations == b.iterations);
}
