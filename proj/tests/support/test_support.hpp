#pragma once

// Random generators and independent oracles shared by the unit and
// acceptance suites. Nothing here calls the code path it is used to check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "glrr/manifold.hpp"
#include "glrr/rng.hpp"

namespace glrr::testing {

inline GrassmannPoint random_point(Rng& rng, Index d, Index p) {
  Eigen::HouseholderQR<Matrix> qr(rng.gaussian(d, p));
  Matrix Q = qr.householderQ() * Matrix::Identity(d, p);
  return GrassmannPoint(Q);
}

inline std::vector<GrassmannPoint> random_points(std::uint64_t seed, int n, Index d, Index p) {
  Rng rng(seed);
  std::vector<GrassmannPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, d, p));
  return pts;
}

inline Matrix random_orthogonal(Rng& rng, Index p) {
  Eigen::HouseholderQR<Matrix> qr(rng.gaussian(p, p));
  return qr.householderQ() * Matrix::Identity(p, p);
}

inline Matrix random_symmetric(Rng& rng, Index n) {
  const Matrix A = rng.gaussian(n, n);
  return 0.5 * (A + A.transpose());
}

inline Matrix random_psd(Rng& rng, Index n, Index rank = -1) {
  const Matrix A = rng.gaussian(n, rank < 0 ? n : rank);
  return A * A.transpose();
}

inline double max_abs(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

/// Delta by vectorizing dense d x d embeddings: Delta_ij = vec(P_i)^T vec(P_j).
inline Matrix dense_delta(const std::vector<GrassmannPoint>& pts) {
  const auto n = static_cast<Index>(pts.size());
  const Index d = pts.front().ambient_dim();
  Matrix B(d * d, n);
  for (Index i = 0; i < n; ++i) {
    const Matrix P = pts[i].basis() * pts[i].basis().transpose();
    B.col(i) = Eigen::Map<const Vector>(P.data(), d * d);
  }
  return B.transpose() * B;
}

/// 1/2 ||Z G^{1/2} - G^{1/2}||_F^2 + lambda ||Z||_* via an explicit square root.
inline double lowrank_objective_oracle(const Matrix& G, const Matrix& Z, double lambda) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  const Matrix root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();
  const double nuc = Eigen::BDCSVD<Matrix>(Z).singularValues().sum();
  return 0.5 * (Z * root - root).squaredNorm() + lambda * nuc;
}

struct ProxResult {
  Matrix Z;
  double objective = 0.0;
  double gradient_mapping_norm = 0.0;
  int iterations = 0;
};

/// Accelerated proximal gradient (FISTA with adaptive restart) on
/// 1/2 ||Z G^{1/2} - G^{1/2}||_F^2 + lambda ||Z||_*, stopped when the gradient
/// mapping norm drops to `tol`.
inline ProxResult prox_gradient_oracle(const Matrix& G, double lambda, double tol = 1e-9,
                                       int max_iters = 2'000'000) {
  const Index n = G.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  const double L = std::max(es.eigenvalues().maxCoeff(), 1e-300);
  auto prox = [&](const Matrix& M, double tau) {
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector s = (svd.singularValues().array() - tau).cwiseMax(0.0).matrix();
    return Matrix(svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose());
  };
  Matrix Z = Matrix::Zero(n, n), Y = Z, Z_prev = Z;
  double t = 1.0;
  ProxResult out;
  for (int it = 0; it < max_iters; ++it) {
    const Matrix grad = Y * G - G;
    Matrix Z_next = prox(Y - grad / L, lambda / L);
    const double gm = L * (Y - Z_next).norm();
    out.iterations = it + 1;
    out.gradient_mapping_norm = gm;
    Z_prev = Z;
    Z = Z_next;
    if (gm <= tol) break;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    // Restart momentum when it points uphill.
    if ((Y - Z).cwiseProduct(Z - Z_prev).sum() > 0.0) {
      t = 1.0;
      Y = Z;
    } else {
      Y = Z + ((t - 1.0) / t_next) * (Z - Z_prev);
      t = t_next;
    }
  }
  out.Z = Z;
  out.objective = lowrank_objective_oracle(G, Z, lambda);
  return out;
}

/// cut(A, B)/vol(A) + cut(A, B)/vol(B) for a two-way split.
inline double ncut_value(const Matrix& W, const std::vector<int>& side) {
  double cut = 0.0, vol0 = 0.0, vol1 = 0.0;
  for (Index i = 0; i < W.rows(); ++i) {
    for (Index j = 0; j < W.cols(); ++j) {
      (side[i] == 0 ? vol0 : vol1) += W(i, j);
      if (side[i] != side[j]) cut += W(i, j);
    }
  }
  cut *= 0.5;
  return cut / vol0 + cut / vol1;
}

/// Exhaustive minimum normalized cut over all proper 2-partitions.
inline std::vector<int> brute_force_ncut(const Matrix& W) {
  const auto n = static_cast<int>(W.rows());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_side;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    if (mask & 1) continue;  // fix vertex 0 on side 0
    std::vector<int> side(n);
    for (int i = 0; i < n; ++i) side[i] = (mask >> i) & 1;
    const double v = ncut_value(W, side);
    if (v < best) {
      best = v;
      best_side = side;
    }
  }
  return best_side;
}

/// Weighted graph with a planted two-way split: in-group weights in
/// [0.5, 1], cross weights in [0, 0.1], random group sizes and vertex order.
inline Matrix planted_two_way_graph(Rng& rng, int n) {
  std::vector<int> group(n);
  const int first = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 3)));
  for (int i = 0; i < n; ++i) group[i] = i < first ? 0 : 1;
  for (int i = n - 1; i > 0; --i) std::swap(group[i], group[rng.below(i + 1)]);
  Matrix W = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = group[i] == group[j] ? 0.5 + 0.5 * rng.uniform() : 0.1 * rng.uniform();
      W(i, j) = W(j, i) = w;
    }
  }
  return W;
}

/// Minimum total cost over all permutations.
inline double brute_force_assignment_cost(const Matrix& cost) {
  std::vector<int> perm(cost.rows());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (Index i = 0; i < cost.rows(); ++i) c += cost(i, perm[i]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// True when the two labelings agree up to a renaming of labels.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace glrr::testing
