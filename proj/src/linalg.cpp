#include "glrr/linalg.hpp"

#include <cmath>

#include "glrr/errors.hpp"

namespace glrr {

namespace {

// Flips columns so the largest-magnitude entry of each column of `lead` is
// positive, applying the same flip to `follow` when it is given.
void fix_signs(Matrix& lead, Matrix* follow) {
  for (Index k = 0; k < lead.cols(); ++k) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < lead.rows(); ++i) {
      const double a = std::abs(lead(i, k));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (lead(best, k) < 0.0) {
      lead.col(k) = -lead.col(k);
      if (follow != nullptr) follow->col(k) = -follow->col(k);
    }
  }
}

}  // namespace

bool all_finite(const Matrix& M) { return M.allFinite(); }

ThinSvd thin_svd(const Matrix& M) {
  if (M.rows() < 1 || M.cols() < 1) throw InvalidInput("thin_svd: empty matrix");
  if (!M.allFinite()) throw InvalidInput("thin_svd: non-finite entry");

  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ThinSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  fix_signs(out.U, &out.V);
  return out;
}

SymEig sym_eig(const Matrix& A) {
  if (A.rows() != A.cols()) throw InvalidInput("sym_eig: matrix is not square");
  if (A.rows() == 0) throw InvalidInput("sym_eig: empty matrix");
  if (!A.allFinite()) throw InvalidInput("sym_eig: non-finite entry");
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8) throw InvalidInput("sym_eig: asymmetry " + std::to_string(asym) + " exceeds 1e-8");

  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(A));
  if (es.info() != Eigen::Success) throw NumericalDivergence("sym_eig: eigensolver did not converge");

  const Index n = A.rows();
  SymEig out{Vector(n), Matrix(n, n)};
  // Eigen returns ascending order.
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = es.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  fix_signs(out.eigenvectors, nullptr);
  return out;
}

double nuclear_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(M).singularValues().sum();
}

Index numerical_rank(const Matrix& M, double rel_tol) {
  if (M.size() == 0) return 0;
  const Vector s = Eigen::JacobiSVD<Matrix>(M).singularValues();
  if (s(0) <= 0.0) return 0;
  return (s.array() > rel_tol * s(0)).count();
}

Matrix symmetrized(const Matrix& M) {
  Matrix out(M.rows(), M.cols());
  for (Index j = 0; j < M.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double v = 0.5 * (M(i, j) + M(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace glrr
