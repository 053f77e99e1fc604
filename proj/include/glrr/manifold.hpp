#pragma once

#include <span>

#include "glrr/linalg.hpp"

namespace glrr {

/// A point on G(p, d): a p-dimensional subspace of R^d held as an orthonormal
/// d x p basis. Any basis of the same span represents the same point; every
/// quantity this library derives from a point is basis-invariant.
class GrassmannPoint {
 public:
  /// Throws InvalidInput unless basis^T basis = I within 1e-10 per entry and
  /// 1 <= p <= d.
  explicit GrassmannPoint(Matrix basis);

  const Matrix& basis() const { return basis_; }
  Index ambient_dim() const { return basis_.rows(); }
  Index subspace_dim() const { return basis_.cols(); }

 private:
  Matrix basis_;
};

/// First p left singular vectors of M. Throws RankDeficient when the p-th
/// singular value is at or below 1e-12 * sigma_max.
GrassmannPoint orthonormalize(const Matrix& M, Index p);

/// Projection embedding X X^T.
Matrix project_embed(const GrassmannPoint& X);

/// ||X1 X1^T - X2 X2^T||_F, evaluated without forming d x d matrices.
double grassmann_distance(const GrassmannPoint& X1, const GrassmannPoint& X2);

/// Throws InvalidInput unless both points live on the same G(p, d).
void require_same_shape(const GrassmannPoint& X1, const GrassmannPoint& X2);

/// Throws InvalidInput unless there are at least `min_count` points sharing d and p.
void require_consistent(std::span<const GrassmannPoint> points, std::size_t min_count);

}  // namespace glrr
