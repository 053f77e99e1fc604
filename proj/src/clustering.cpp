#include <cmath>

#include "glrr/clustering.hpp"
#include "glrr/errors.hpp"

namespace glrr {

Affinity affinity_from_z(const Matrix& Z) {
  if (Z.rows() != Z.cols()) throw InvalidInput("affinity_from_z: Z must be square");
  const Index n = Z.rows();
  Matrix W(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double v = 0.5 * (std::abs(Z(i, j)) + std::abs(Z(j, i)));
      W(i, j) = v;
      W(j, i) = v;
    }
  }
  return {std::move(W)};
}

void NcutConfig::validate() const {
  if (clusters < 2) throw InvalidConfig("ncut: need at least 2 clusters");
  if (kmeans_restarts < 1) throw InvalidConfig("ncut: need at least one k-means restart");
  if (kmeans_max_iters < 1) throw InvalidConfig("ncut: k-means needs at least one iteration");
}

Matrix spectral_embedding(const Matrix& W, int clusters) {
  const Index n = W.rows();
  if (W.cols() != n) throw InvalidInput("spectral_embedding: W must be square");
  if (clusters < 1 || clusters > n) {
    throw InvalidConfig("spectral_embedding: " + std::to_string(clusters) + " clusters for " +
                        std::to_string(n) + " points");
  }
  const Vector degree = W.rowwise().sum();
  Vector inv_sqrt(n);
  for (Index i = 0; i < n; ++i) inv_sqrt(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;

  const Matrix laplacian =
      Matrix::Identity(n, n) - inv_sqrt.asDiagonal() * W * inv_sqrt.asDiagonal();
  const SymEig eig = sym_eig(symmetrized(laplacian));

  // sym_eig is descending; the smallest eigenvalues sit at the end.
  Matrix emb(n, clusters);
  for (int k = 0; k < clusters; ++k) emb.col(k) = eig.eigenvectors.col(n - 1 - k);
  for (Index i = 0; i < n; ++i) {
    const double norm = emb.row(i).norm();
    if (norm > 0.0) emb.row(i) /= norm;
  }
  return emb;
}

ClusterLabels ncut(const Affinity& affinity, const NcutConfig& cfg) {
  cfg.validate();
  if (cfg.clusters > affinity.W.rows()) {
    throw InvalidConfig("ncut: " + std::to_string(cfg.clusters) + " clusters for " +
                        std::to_string(affinity.W.rows()) + " points");
  }
  const Matrix emb = spectral_embedding(affinity.W, cfg.clusters);
  return kmeans(emb, cfg.clusters, cfg.kmeans_restarts, cfg.kmeans_max_iters, cfg.seed).labels;
}

}  // namespace glrr
