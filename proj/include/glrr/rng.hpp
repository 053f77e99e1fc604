#pragma once

#include <cstdint>
#include <random>

#include "glrr/linalg.hpp"

namespace glrr {

/// Seedable generator shared by every randomized routine in the library.
///
/// Raw output is std::mt19937_64 (fully specified by the C++ standard), unit
/// doubles take the top 53 bits, and normals come from the Box-Muller
/// transform, so a seed reproduces the same stream on any conforming platform.
/// Distribution objects from <random> are deliberately not used: their output
/// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  /// Standard normal. Box-Muller yields pairs; the second value is cached.
  double normal();

  /// rows x cols matrix of independent standard normals, filled column by column.
  Matrix gaussian(Index rows, Index cols);

  /// Derives an independent seed for sub-stream `stream` (splitmix64 finalizer).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace glrr
