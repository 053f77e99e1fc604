#pragma once

#include <span>
#include <vector>

#include "glrr/kernels.hpp"
#include "glrr/linalg.hpp"
#include "glrr/manifold.hpp"

namespace glrr {

/// Delta_ij = tr[(X_j^T X_i)(X_i^T X_j)], the inner products of the projection
/// embeddings. Symmetric PSD with p on the diagonal.
struct DeltaMatrix {
  Matrix values;
  Index subspace_dim = 0;
};

/// Assembled from p x p products only; the upper triangle is evaluated in parallel.
DeltaMatrix build_delta(std::span<const GrassmannPoint> points);

struct ClosedFormReport {
  double lambda = 0.0;
  std::vector<double> eigenvalues;  // of the Gram matrix, descending
  Index kept_count = 0;             // eigenvalues strictly above lambda
  /// 1/2 ||Z G^{1/2} - G^{1/2}||_F^2 + lambda ||Z||_*, through traces. The
  /// shrinkage rule below is the exact minimizer at this normalization.
  double objective = 0.0;
  /// 1/2 sum_i ||Pi(X_i) - sum_j z_ij Pi(X_j)||_F^2 + lambda ||Z||_*, which
  /// keeps the constant term N p. Only set by the DeltaMatrix overload (NaN otherwise).
  double reconstruction_objective = 0.0;
  double clamp_magnitude = 0.0;
};

struct ClosedFormResult {
  Matrix Z;
  ClosedFormReport report;
};

/// Z = U D_lambda U^T with D_lambda(i,i) = 1 - lambda/sigma_i for sigma_i > lambda,
/// else 0. Eigenvalues below 1e-12 * sigma_max count as zero. G must be PSD.
ClosedFormResult glrr_f_solve(const Matrix& G, double lambda);
ClosedFormResult glrr_f_solve(const DeltaMatrix& delta, double lambda);
ClosedFormResult glrr_f_solve(const KernelMatrix& K, double lambda);

/// gram -> psd_clamp -> glrr_f_solve.
ClosedFormResult kglrr_solve(std::span<const GrassmannPoint> points, const KernelSpec& spec,
                             double lambda);

/// (tr(G) - 2 tr(Z G) + tr(Z G Z^T)) / 2 + lambda ||Z||_*.
double lowrank_objective(const Matrix& G, const Matrix& Z, double lambda);

/// (N p - 2 tr(Z Delta) + tr(Z Delta Z^T)) / 2 + lambda ||Z||_*.
double reconstruction_objective(const DeltaMatrix& delta, const Matrix& Z, double lambda);

namespace reference {
DeltaMatrix build_delta(std::span<const GrassmannPoint> points);
}  // namespace reference

}  // namespace glrr
