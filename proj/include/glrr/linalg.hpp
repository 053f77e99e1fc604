#pragma once

#include <Eigen/Dense>

namespace glrr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thin SVD M = U diag(S) V^T with r = min(rows, cols).
///
/// Singular values are sorted descending. Each column of U is oriented so
/// that its largest-magnitude entry is positive (first index wins ties), with
/// the matching column of V flipped alongside it.
struct ThinSvd {
  Matrix U;
  Vector S;
  Matrix V;
};

/// Symmetric eigendecomposition, eigenvalues descending, eigenvectors as columns.
struct SymEig {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Throws InvalidInput if M is empty or has a non-finite entry.
ThinSvd thin_svd(const Matrix& M);

/// Decomposes (A + A^T)/2. Throws InvalidInput if A is not square or
/// max|A - A^T| exceeds 1e-8.
SymEig sym_eig(const Matrix& A);

bool all_finite(const Matrix& M);

/// Sum of singular values.
double nuclear_norm(const Matrix& M);

/// Number of singular values above rel_tol * sigma_max.
Index numerical_rank(const Matrix& M, double rel_tol = 1e-10);

/// (M + M^T)/2, exactly symmetric.
Matrix symmetrized(const Matrix& M);

}  // namespace glrr
