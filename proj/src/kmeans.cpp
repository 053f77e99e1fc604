#include <algorithm>
#include <limits>
#include <numeric>

#include "glrr/clustering.hpp"
#include "glrr/errors.hpp"
#include "glrr/rng.hpp"

namespace glrr {

namespace {

struct Run {
  std::vector<int> labels;
  Matrix centers;
  double inertia = std::numeric_limits<double>::infinity();
};

Matrix seed_centers(const Matrix& X, int k, Rng& rng) {
  const Index n = X.rows();
  Matrix centers(k, X.cols());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::vector<double> d2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());

  Index pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (Index i = 0; i < n; ++i) total += d2[i];
      if (total > 0.0) {
        const double target = rng.uniform() * total;
        double acc = 0.0;
        pick = -1;
        for (Index i = 0; i < n; ++i) {
          if (d2[i] <= 0.0) continue;
          acc += d2[i];
          pick = i;
          if (acc > target) break;
        }
      } else {
        // Every point coincides with a center already: take the next unused one.
        pick = 0;
        while (pick < n - 1 && chosen[pick]) ++pick;
      }
    }
    chosen[pick] = true;
    centers.row(c) = X.row(pick);
    for (Index i = 0; i < n; ++i) d2[i] = std::min(d2[i], (X.row(i) - X.row(pick)).squaredNorm());
  }
  return centers;
}

// Moves the farthest point (from a cluster of size > 1) into each empty cluster.
void repair_empty(const Matrix& X, int k, std::vector<int>& labels, Matrix& centers) {
  std::vector<int> sizes(k, 0);
  for (int l : labels) ++sizes[l];
  for (int c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    Index far = -1;
    double far_d = -1.0;
    for (Index i = 0; i < X.rows(); ++i) {
      if (sizes[labels[i]] <= 1) continue;
      const double dist = (X.row(i) - centers.row(labels[i])).squaredNorm();
      if (dist > far_d) {
        far_d = dist;
        far = i;
      }
    }
    if (far < 0) break;
    --sizes[labels[far]];
    labels[far] = c;
    sizes[c] = 1;
    centers.row(c) = X.row(far);
  }
}

Run lloyd(const Matrix& X, int k, int max_iters, std::uint64_t seed) {
  Rng rng(seed);
  Run run;
  run.centers = seed_centers(X, k, rng);
  const Index n = X.rows();
  run.labels.assign(static_cast<std::size_t>(n), -1);

  for (int it = 0; it < std::max(max_iters, 1); ++it) {
    std::vector<int> next(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double dist = (X.row(i) - run.centers.row(c)).squaredNorm();
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      next[i] = best;
    }
    repair_empty(X, k, next, run.centers);
    const bool stable = next == run.labels;
    run.labels = std::move(next);

    Matrix sums = Matrix::Zero(k, X.cols());
    std::vector<int> counts(k, 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(run.labels[i]) += X.row(i);
      ++counts[run.labels[i]];
    }
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0) run.centers.row(c) = sums.row(c) / counts[c];
    if (stable) break;
  }

  run.inertia = 0.0;
  for (Index i = 0; i < n; ++i) run.inertia += (X.row(i) - run.centers.row(run.labels[i])).squaredNorm();
  return run;
}

std::vector<Index> canonical_order(const Matrix& X) {
  std::vector<Index> order(static_cast<std::size_t>(X.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (X(a, j) < X(b, j)) return true;
      if (X(b, j) < X(a, j)) return false;
    }
    return false;
  });
  return order;
}

void check_args(const Matrix& rows, int k, int restarts) {
  if (k < 1) throw InvalidConfig("kmeans: need at least one cluster");
  if (restarts < 1) throw InvalidConfig("kmeans: need at least one restart");
  if (rows.rows() < k) {
    throw InvalidConfig("kmeans: " + std::to_string(k) + " clusters for " +
                        std::to_string(rows.rows()) + " points");
  }
  if (!rows.allFinite()) throw InvalidInput("kmeans: non-finite input");
}

KmeansResult finish(const Matrix& rows, const std::vector<Index>& order, std::vector<Run>& runs,
                    int k) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].inertia < runs[best].inertia) best = r;

  KmeansResult out;
  out.labels.clusters = k;
  out.labels.labels.resize(static_cast<std::size_t>(rows.rows()));
  for (std::size_t pos = 0; pos < order.size(); ++pos) out.labels.labels[order[pos]] = runs[best].labels[pos];
  out.centers = std::move(runs[best].centers);
  out.inertia = runs[best].inertia;
  return out;
}

Matrix permuted_rows(const Matrix& rows, const std::vector<Index>& order) {
  Matrix X(rows.rows(), rows.cols());
  for (std::size_t pos = 0; pos < order.size(); ++pos) X.row(pos) = rows.row(order[pos]);
  return X;
}

}  // namespace

KmeansResult kmeans(const Matrix& rows, int clusters, int restarts, int max_iters,
                    std::uint64_t seed) {
  check_args(rows, clusters, restarts);
  const auto order = canonical_order(rows);
  const Matrix X = permuted_rows(rows, order);
  std::vector<Run> runs(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) runs[r] = lloyd(X, clusters, max_iters, Rng::derive(seed, r));
  return finish(rows, order, runs, clusters);
}

namespace reference {

KmeansResult kmeans(const Matrix& rows, int clusters, int restarts, int max_iters,
                    std::uint64_t seed) {
  check_args(rows, clusters, restarts);
  const auto order = canonical_order(rows);
  const Matrix X = permuted_rows(rows, order);
  std::vector<Run> runs(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) runs[r] = lloyd(X, clusters, max_iters, Rng::derive(seed, r));
  return finish(rows, order, runs, clusters);
}

}  // namespace reference

}  // namespace glrr
