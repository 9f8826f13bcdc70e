#include <doctest.h>

#include <algorithm>

#include "abilityrank/c1p.hpp"
#include "abilityrank/dense.hpp"
#include "helpers.hpp"

using namespace abilityrank;

TEST_CASE("consecutive ones check") {
  Eigen::MatrixXd ex1(3, 4);
  ex1 << 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1;
  CHECK(is_p_matrix(ex1));

  Eigen::MatrixXd swapped(3, 4);
  swapped << 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1;  // rows u2, u1, u3
  CHECK_FALSE(is_p_matrix(swapped));

  Eigen::MatrixXd with_zero_col(3, 2);
  with_zero_col << 1, 0, 1, 0, 0, 0;
  CHECK(is_p_matrix(with_zero_col));

  Eigen::MatrixXd nonbinary(2, 2);
  nonbinary << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(is_p_matrix(nonbinary), NonBinaryError);
}

TEST_CASE("sparse and dense consecutive ones checks agree") {
  ResponseMatrix m = test::ex1();
  std::vector<int> identity = {0, 1, 2};
  std::vector<int> swap = {1, 0, 2};
  CHECK(is_p_matrix(m, identity));
  CHECK_FALSE(is_p_matrix(m, swap));
}

TEST_CASE("brute-force permutation search") {
  SUBCASE("fixture is already in order") {
    auto cert = brute_force_c1p_order(test::ex1());
    REQUIRE(cert.has_value());
    CHECK(cert->permutation == std::vector<int>{0, 1, 2});
    CHECK(cert->verified);
    CHECK(cert->certifying_count == 2);  // the order and its reverse
  }
  SUBCASE("shuffled fixture is restored up to reversal") {
    // Rows of EX1 in order u3, u1, u2.
    std::vector<ResponseRecord> records = {{0, 0, 1}, {0, 1, 1}, {1, 0, 0},
                                           {1, 1, 0}, {2, 0, 0}, {2, 1, 1}};
    ResponseMatrix m = ResponseMatrix::from_records(records);
    auto cert = brute_force_c1p_order(m);
    REQUIRE(cert.has_value());
    bool forward = cert->permutation == std::vector<int>{1, 2, 0};
    bool backward = cert->permutation == std::vector<int>{0, 2, 1};
    CHECK((forward || backward));
    CHECK(is_p_matrix(m, cert->permutation));
  }
  SUBCASE("dense variant agrees with exhaustive expectations") {
    Eigen::MatrixXd a(3, 4);
    a << 1, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1;
    auto cert = brute_force_c1p_order(a);
    // Exhaustive ground truth: check every permutation ourselves.
    bool any = false;
    std::vector<int> perm = {0, 1, 2};
    do {
      Eigen::MatrixXd p(3, 4);
      for (int r = 0; r < 3; ++r) p.row(r) = a.row(perm[r]);
      if (is_p_matrix(p)) any = true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(cert.has_value() == any);
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(brute_force_c1p_order(Eigen::MatrixXd::Zero(9, 2)),
                    TooLargeError);
  }
}

TEST_CASE("R-matrix check") {
  CHECK(is_r_matrix(dense_update_matrix(test::ex1())));

  Eigen::MatrixXd bad(3, 3);
  bad << 1, 0, 1, 0, 1, 0, 1, 0, 1;
  CHECK_FALSE(is_r_matrix(bad));

  Eigen::MatrixXd any2(2, 2);
  any2 << 0.3, -2, -2, 9;
  CHECK(is_r_matrix(any2));  // no index triple exists

  CHECK_THROWS_AS(is_r_matrix(Eigen::MatrixXd::Zero(2, 3)), NonSquareError);
}

TEST_CASE("consecutive ones check is invariant under column permutation and "
          "row reversal") {
  abilityrank::Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 2 + static_cast<int>(rng.below(5));
    const int cols = 2 + static_cast<int>(rng.below(6));
    Eigen::MatrixXd a(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) a(r, c) = rng.below(2) ? 1.0 : 0.0;

    bool base = is_p_matrix(a);

    Eigen::MatrixXd shuffled = a;
    for (int c = cols - 1; c > 0; --c) {
      int other = static_cast<int>(rng.below(c + 1));
      shuffled.col(c).swap(shuffled.col(other));
    }
    CHECK(is_p_matrix(shuffled) == base);

    Eigen::MatrixXd reversed = a.colwise().reverse();
    CHECK(is_p_matrix(reversed) == base);
  }
}
