#pragma once

#include <cstdint>
#include <vector>

#include "glrr/clustering.hpp"
#include "glrr/manifold.hpp"

namespace glrr {

/// Union-of-subspaces fixture: C random center subspaces on G(p, d) and
/// `per_cluster` noisy copies of each.
struct SynthSpec {
  int clusters = 2;
  int per_cluster = 10;
  Index d = 10;
  Index p = 2;
  double noise_sigma = 0.0;
  /// Smallest principal angle (degrees) required between distinct centers.
  /// 90 asks for mutually orthogonal centers and needs C p <= d.
  double min_separation = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthData {
  std::vector<GrassmannPoint> points;  // cluster-major order
  ClusterLabels labels;
  std::vector<GrassmannPoint> centers;
};

/// Each point is orthonormalize(center + sigma * G) with G standard normal.
/// Throws InfeasibleSpec when a separated center cannot be found in 1000 draws.
SynthData synth_union(const SynthSpec& spec);

/// Replaces round(fraction * N) points, chosen at random, by random
/// subspaces. Returns the replaced indices in ascending order.
std::vector<std::size_t> replace_with_outliers(std::vector<GrassmannPoint>& points,
                                               double fraction, std::uint64_t seed);

}  // namespace glrr
