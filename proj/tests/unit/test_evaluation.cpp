#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "glrr/errors.hpp"
#include "glrr/evaluation.hpp"
#include "test_support.hpp"

using namespace glrr;

namespace {

double assignment_cost(const Matrix& cost, const std::vector<int>& cols) {
  double total = 0.0;
  for (Index i = 0; i < cost.rows(); ++i) total += cost(i, cols[i]);
  return total;
}

}  // namespace

TEST_CASE("accuracy examples") {
  const std::vector<int> truth{0, 0, 1, 1, 2, 2, 2};
  CHECK(accuracy(truth, truth).accuracy == 1.0);

  const std::vector<int> renamed{2, 2, 0, 0, 1, 1, 1};
  const EvalReport r = accuracy(renamed, truth);
  CHECK(r.accuracy == 1.0);
  CHECK(r.matched == 7);
  std::vector<std::pair<int, int>> expected{{0, 1}, {1, 2}, {2, 0}};
  auto matching = r.matching;
  std::sort(matching.begin(), matching.end());
  CHECK(matching == expected);

  const std::vector<int> a{0, 0, 1, 1}, b{0, 1, 0, 1};
  CHECK(accuracy(a, b).accuracy == 0.5);
}

TEST_CASE("confusion matrix counts") {
  const std::vector<int> pred{0, 0, 1, 1, 1}, truth{0, 1, 1, 1, 0};
  const EvalReport r = accuracy(pred, truth);
  Eigen::MatrixXi expected(2, 2);
  expected << 1, 1, 1, 2;
  CHECK(r.confusion == expected);
  CHECK(r.accuracy == doctest::Approx(0.6));
}

TEST_CASE("accuracy errors") {
  const std::vector<int> a{0, 1}, b{0, 1, 1};
  CHECK_THROWS_AS(accuracy(a, b), InvalidInput);
  const std::vector<int> neg{0, -1};
  CHECK_THROWS_AS(accuracy(neg, a), InvalidInput);
  CHECK_THROWS_AS(accuracy(a, neg), InvalidInput);
}

TEST_CASE("unequal label counts are padded") {
  const std::vector<int> truth{0, 0, 0, 1, 1, 1};
  const std::vector<int> pred{0, 1, 2, 3, 3, 3};
  CHECK(accuracy(pred, truth).accuracy == doctest::Approx(4.0 / 6.0));
  const std::vector<int> constant(6, 0);
  CHECK(accuracy(constant, truth).accuracy == doctest::Approx(0.5));
}

TEST_CASE("accuracy symmetry and constant-prediction bound") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(20));
    std::vector<int> pred(n), truth(n);
    for (int i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng.below(4));
      truth[i] = static_cast<int>(rng.below(4));
    }
    const double acc = accuracy(pred, truth).accuracy;
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
    CHECK(accuracy(truth, pred).accuracy == doctest::Approx(acc));
    std::vector<int> shifted(pred);
    for (int& v : shifted) v = (v + 1) % 4;
    CHECK(accuracy(shifted, truth).accuracy == doctest::Approx(acc));

    std::vector<int> counts(4, 0);
    for (int t : truth) ++counts[t];
    const std::vector<int> constant(n, 0);
    CHECK(accuracy(constant, truth).accuracy >=
          static_cast<double>(*std::max_element(counts.begin(), counts.end())) / n - 1e-15);
  }
}

TEST_CASE("hungarian trivial cases") {
  Matrix cost = Matrix::Ones(4, 4) - Matrix::Identity(4, 4);
  CHECK(hungarian(cost) == std::vector<int>{0, 1, 2, 3});
  CHECK(hungarian(Matrix::Constant(1, 1, 3.5)) == std::vector<int>{0});
}

TEST_CASE("hungarian matches brute force on 5x5 integer costs") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix cost(5, 5);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 5; ++j) cost(i, j) = static_cast<double>(rng.below(20));
    const std::vector<int> cols = hungarian(cost);
    std::vector<int> sorted = cols;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(assignment_cost(cost, cols) == glrr::testing::brute_force_assignment_cost(cost));
  }
}

TEST_CASE("hungarian beats random permutations on 8x8") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix cost = rng.gaussian(8, 8);
    const double best = assignment_cost(cost, hungarian(cost));
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 1000; ++k) {
      for (int i = 7; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
      CHECK(best <= assignment_cost(cost, perm) + 1e-12);
    }
  }
}

TEST_CASE("hungarian on rectangular costs") {
  Matrix wide(2, 3);
  wide << 5, 1, 9, 2, 8, 0;
  CHECK(hungarian(wide) == std::vector<int>{1, 2});
  Matrix tall(3, 2);
  tall << 5, 1, 2, 8, 0, 7;
  const std::vector<int> cols = hungarian(tall);
  CHECK(cols[0] == 1);
  CHECK(cols[2] == 0);
  CHECK(cols[1] == -1);
}
