#pragma once

#include <span>
#include <utility>
#include <vector>

#include "glrr/linalg.hpp"

namespace glrr {

struct EvalReport {
  double accuracy = 0.0;                      // matched points / N, in [0, 1]
  std::vector<std::pair<int, int>> matching;  // predicted label -> true label
  Eigen::MatrixXi confusion;                  // rows: predicted label, cols: true label
  long matched = 0;
};

/// Clustering accuracy under the best one-to-one matching of predicted to true
/// labels. When the label counts differ the contingency table is padded, so
/// unmatched predicted labels score nothing.
EvalReport accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Minimum-cost assignment (Kuhn-Munkres with potentials, O(n^3)).
/// Returns the column for each row. Rectangular inputs are padded with a cost
/// above every real entry; rows left on a padding column map to -1.
std::vector<int> hungarian(const Matrix& cost);

}  // namespace glrr
