#pragma once

#include <cstdint>
#include <vector>

#include "glrr/linalg.hpp"

namespace glrr {

struct ClusterLabels {
  std::vector<int> labels;
  int clusters = 0;
};

/// W = (|Z| + |Z^T|)/2, assembled from one triangle so it is exactly symmetric.
struct Affinity {
  Matrix W;
};

Affinity affinity_from_z(const Matrix& Z);

struct NcutConfig {
  int clusters = 2;
  int kmeans_restarts = 20;
  int kmeans_max_iters = 300;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Rows of the C eigenvectors of I - D^{-1/2} W D^{-1/2} with the smallest
/// eigenvalues, each row scaled to unit length (zero rows stay zero).
/// Zero-degree vertices get D^{-1/2} = 0.
Matrix spectral_embedding(const Matrix& W, int clusters);

/// Normalized-cuts clustering: spectral_embedding followed by kmeans.
/// Throws InvalidConfig when C > N.
ClusterLabels ncut(const Affinity& affinity, const NcutConfig& cfg);

struct KmeansResult {
  ClusterLabels labels;
  Matrix centers;  // C x dim
  double inertia = 0.0;
};

/// Lloyd iterations from k-means++ seeding, best of `restarts` by inertia.
///
/// Rows are first put in a canonical (lexicographic) order and seeding runs in
/// that order, so permuting the input rows permutes the labels identically.
/// Empty clusters are reseeded with the point farthest from its center.
KmeansResult kmeans(const Matrix& rows, int clusters, int restarts, int max_iters,
                    std::uint64_t seed);

namespace reference {
/// Restarts run one after another; same result as glrr::kmeans.
KmeansResult kmeans(const Matrix& rows, int clusters, int restarts, int max_iters,
                    std::uint64_t seed);
}  // namespace reference

}  // namespace glrr
