#include "glrr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "glrr/errors.hpp"
#include "glrr/kernels.hpp"
#include "glrr/rng.hpp"

namespace glrr {

void SynthSpec::validate() const {
  if (clusters < 1 || per_cluster < 1 || clusters * per_cluster < 2) {
    throw InvalidConfig("synth: need clusters, per_cluster >= 1 and at least 2 points");
  }
  if (p < 1 || p > d) throw InvalidConfig("synth: need 1 <= p <= d");
  if (!(noise_sigma >= 0.0)) throw InvalidConfig("synth: noise sigma must be >= 0");
  if (!(min_separation >= 0.0 && min_separation <= 90.0)) {
    throw InvalidConfig("synth: min_separation must lie in [0, 90] degrees");
  }
  if (min_separation >= 90.0 && static_cast<Index>(clusters) * p > d) {
    throw InvalidConfig("synth: orthogonal centers need clusters * p <= d");
  }
}

namespace {

double smallest_angle_deg(const GrassmannPoint& a, const GrassmannPoint& b) {
  const double c = principal_angle_cosines(a, b)(0);
  return std::acos(std::clamp(c, 0.0, 1.0)) * 180.0 / std::numbers::pi;
}

}  // namespace

SynthData synth_union(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  SynthData data;

  if (spec.min_separation >= 90.0) {
    const Index total = static_cast<Index>(spec.clusters) * spec.p;
    const GrassmannPoint joint = orthonormalize(rng.gaussian(spec.d, total), total);
    for (int c = 0; c < spec.clusters; ++c) {
      data.centers.emplace_back(joint.basis().middleCols(c * spec.p, spec.p));
    }
  } else {
    for (int c = 0; c < spec.clusters; ++c) {
      bool placed = false;
      for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
        GrassmannPoint candidate = orthonormalize(rng.gaussian(spec.d, spec.p), spec.p);
        placed = std::all_of(data.centers.begin(), data.centers.end(), [&](const auto& other) {
          return smallest_angle_deg(candidate, other) >= spec.min_separation;
        });
        if (placed) data.centers.push_back(std::move(candidate));
      }
      if (!placed) {
        throw InfeasibleSpec("synth: no center " + std::to_string(c) + " with separation >= " +
                             std::to_string(spec.min_separation) + " degrees after 1000 draws");
      }
    }
  }

  data.labels.clusters = spec.clusters;
  for (int c = 0; c < spec.clusters; ++c) {
    for (int k = 0; k < spec.per_cluster; ++k) {
      const Matrix noisy = data.centers[c].basis() + spec.noise_sigma * rng.gaussian(spec.d, spec.p);
      data.points.push_back(orthonormalize(noisy, spec.p));
      data.labels.labels.push_back(c);
    }
  }
  return data;
}

std::vector<std::size_t> replace_with_outliers(std::vector<GrassmannPoint>& points,
                                               double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidConfig("outlier fraction must lie in [0, 1]");
  if (points.empty()) return {};
  const std::size_t n = points.size();
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  const Index d = points.front().ambient_dim();
  const Index p = points.front().subspace_dim();

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> replaced(order.begin(), order.begin() + static_cast<long>(count));
  std::sort(replaced.begin(), replaced.end());
  for (std::size_t idx : replaced) points[idx] = orthonormalize(rng.gaussian(d, p), p);
  return replaced;
}

}  // namespace glrr
