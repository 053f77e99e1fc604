#include "glrr/manifold.hpp"

#include <cmath>
#include <string>

#include "glrr/errors.hpp"

namespace glrr {

GrassmannPoint::GrassmannPoint(Matrix basis) : basis_(std::move(basis)) {
  const Index d = basis_.rows();
  const Index p = basis_.cols();
  if (p < 1 || p > d) {
    throw InvalidInput("GrassmannPoint: need 1 <= p <= d, got p=" + std::to_string(p) +
                       ", d=" + std::to_string(d));
  }
  if (!basis_.allFinite()) throw InvalidInput("GrassmannPoint: non-finite basis entry");
  const Matrix gram = basis_.transpose() * basis_;
  const double err = (gram - Matrix::Identity(p, p)).cwiseAbs().maxCoeff();
  if (err > 1e-10) {
    throw InvalidInput("GrassmannPoint: basis is not orthonormal (max deviation " +
                       std::to_string(err) + ")");
  }
}

GrassmannPoint orthonormalize(const Matrix& M, Index p) {
  if (p < 1 || p > std::min(M.rows(), M.cols())) {
    throw InvalidInput("orthonormalize: p=" + std::to_string(p) + " outside [1, min(" +
                       std::to_string(M.rows()) + ", " + std::to_string(M.cols()) + ")]");
  }
  ThinSvd svd = thin_svd(M);
  const double cutoff = 1e-12 * svd.S(0);
  if (!(svd.S(p - 1) > cutoff)) {
    const Index achieved = (svd.S.array() > cutoff).count();
    throw RankDeficient(static_cast<long>(p), static_cast<long>(achieved));
  }
  return GrassmannPoint(svd.U.leftCols(p));
}

Matrix project_embed(const GrassmannPoint& X) {
  return X.basis() * X.basis().transpose();
}

void require_same_shape(const GrassmannPoint& X1, const GrassmannPoint& X2) {
  if (X1.ambient_dim() != X2.ambient_dim() || X1.subspace_dim() != X2.subspace_dim()) {
    throw InvalidInput("dimension mismatch: G(" + std::to_string(X1.subspace_dim()) + "," +
                       std::to_string(X1.ambient_dim()) + ") vs G(" +
                       std::to_string(X2.subspace_dim()) + "," +
                       std::to_string(X2.ambient_dim()) + ")");
  }
}

void require_consistent(std::span<const GrassmannPoint> points, std::size_t min_count) {
  if (points.size() < min_count) {
    throw InvalidInput("need at least " + std::to_string(min_count) + " points, got " +
                       std::to_string(points.size()));
  }
  for (const auto& X : points) require_same_shape(points.front(), X);
}

double grassmann_distance(const GrassmannPoint& X1, const GrassmannPoint& X2) {
  require_same_shape(X1, X2);
  // d_g^2 = 2p - 2||X1^T X2||_F^2 = ||(I - P1) X2||_F^2 + ||(I - P2) X1||_F^2.
  // The residual form avoids cancellation near zero distance and the sum is
  // exactly symmetric in its arguments.
  const Matrix cross = X1.basis().transpose() * X2.basis();
  const double r12 = (X2.basis() - X1.basis() * cross).squaredNorm();
  const double r21 = (X1.basis() - X2.basis() * cross.transpose()).squaredNorm();
  return std::sqrt(r12 + r21);
}

}  // namespace glrr
