#include "glrr/evaluation.hpp"

#include <algorithm>
#include <limits>

#include "glrr/errors.hpp"

namespace glrr {

std::vector<int> hungarian(const Matrix& cost) {
  const Index rows = cost.rows();
  const Index cols = cost.cols();
  if (rows == 0 || cols == 0) return {};
  if (!cost.allFinite()) throw InvalidInput("hungarian: non-finite cost");

  const Index n = std::max(rows, cols);
  const double pad = cost.maxCoeff() + 1.0;
  Matrix a = Matrix::Constant(n, n, pad);
  a.topLeftCorner(rows, cols) = cost;

  // 1-based arrays; column 0 is the virtual start column.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> match(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const Index i0 = match[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> assignment(static_cast<std::size_t>(rows), -1);
  for (Index j = 1; j <= n; ++j) {
    const Index r = match[j] - 1;
    if (r < rows && j - 1 < cols) assignment[r] = static_cast<int>(j - 1);
  }
  return assignment;
}

EvalReport accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw InvalidInput("accuracy: " + std::to_string(predicted.size()) + " predicted labels vs " +
                       std::to_string(truth.size()) + " true labels");
  }
  if (truth.empty()) throw InvalidInput("accuracy: no labels");
  const auto negative = [](int l) { return l < 0; };
  if (std::any_of(predicted.begin(), predicted.end(), negative) ||
      std::any_of(truth.begin(), truth.end(), negative)) {
    throw InvalidInput("accuracy: labels must be nonnegative");
  }

  const int kp = *std::max_element(predicted.begin(), predicted.end()) + 1;
  const int kt = *std::max_element(truth.begin(), truth.end()) + 1;
  EvalReport report;
  report.confusion = Eigen::MatrixXi::Zero(kp, kt);
  for (std::size_t i = 0; i < truth.size(); ++i) ++report.confusion(predicted[i], truth[i]);

  const int k = std::max(kp, kt);
  Matrix cost = Matrix::Zero(k, k);
  cost.topLeftCorner(kp, kt) = -report.confusion.cast<double>();
  const std::vector<int> assignment = hungarian(cost);

  for (int p = 0; p < kp; ++p) {
    const int t = assignment[p];
    if (t < kt) {
      report.matching.emplace_back(p, t);
      report.matched += report.confusion(p, t);
    }
  }
  report.accuracy = static_cast<double>(report.matched) / static_cast<double>(truth.size());
  return report;
}

}  // namespace glrr
