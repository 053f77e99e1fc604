// Parallel kernels against their serial baselines, under several thread counts.

#include <omp.h>

#include "doctest.h"
#include "glrr/admm.hpp"
#include "glrr/clustering.hpp"
#include "glrr/kernels.hpp"
#include "test_support.hpp"

using namespace glrr;
using glrr::testing::random_points;

namespace {

const int kThreadCounts[] = {1, 2, 4, 7};

struct ThreadScope {
  int saved = omp_get_max_threads();
  explicit ThreadScope(int n) { omp_set_num_threads(n); }
  ~ThreadScope() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("gram entries") {
  const auto pts = random_points(1, 23, 12, 3);
  for (KernelKind kind : {KernelKind::projection, KernelKind::cc_max, KernelKind::cc_sum, KernelKind::ccp}) {
    const KernelSpec spec{kind, 0.4};
    const Matrix serial = reference::gram_entries(pts, spec);
    for (int t : kThreadCounts) {
      ThreadScope scope(t);
      CHECK(gram_entries(pts, spec) == serial);
    }
  }
}

TEST_CASE("build_delta") {
  const auto pts = random_points(2, 31, 15, 4);
  const Matrix serial = reference::build_delta(pts).values;
  for (int t : kThreadCounts) {
    ThreadScope scope(t);
    CHECK(build_delta(pts).values == serial);
  }
}

TEST_CASE("e_step") {
  Rng rng(3);
  const Matrix D = build_delta(random_points(3, 40, 10, 2)).values;
  const Matrix Z = 0.1 * rng.gaussian(40, 40), Xi = rng.gaussian(40, 40);
  const Matrix serial = reference::e_step(Z, Xi, 0.7, D);
  for (int t : kThreadCounts) {
    ThreadScope scope(t);
    CHECK(e_step(Z, Xi, 0.7, D) == serial);
  }
}

TEST_CASE("kmeans restarts") {
  Rng rng(4);
  const Matrix X = rng.gaussian(60, 4);
  const KmeansResult serial = reference::kmeans(X, 5, 12, 100, 99);
  for (int t : kThreadCounts) {
    ThreadScope scope(t);
    const KmeansResult par = kmeans(X, 5, 12, 100, 99);
    CHECK(par.labels.labels == serial.labels.labels);
    CHECK(par.centers == serial.centers);
    CHECK(par.inertia == serial.inertia);
  }
}
