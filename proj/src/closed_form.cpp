#include "glrr/closed_form.hpp"

#include <limits>

#include "glrr/errors.hpp"

namespace glrr {

namespace {

double delta_entry(const GrassmannPoint& Xi, const GrassmannPoint& Xj) {
  const Matrix cross = Xj.basis().transpose() * Xi.basis();
  return (cross * cross.transpose()).trace();
}

}  // namespace

DeltaMatrix build_delta(std::span<const GrassmannPoint> points) {
  require_consistent(points, 2);
  const auto n = static_cast<Index>(points.size());
  Matrix D(n, n);
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = delta_entry(points[i], points[j]);
      D(i, j) = v;
      D(j, i) = v;
    }
  }
  return {std::move(D), points.front().subspace_dim()};
}

namespace reference {

DeltaMatrix build_delta(std::span<const GrassmannPoint> points) {
  require_consistent(points, 2);
  const auto n = static_cast<Index>(points.size());
  Matrix D(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = delta_entry(points[i], points[j]);
      D(i, j) = v;
      D(j, i) = v;
    }
  }
  return {std::move(D), points.front().subspace_dim()};
}

}  // namespace reference

double lowrank_objective(const Matrix& G, const Matrix& Z, double lambda) {
  const Matrix ZG = Z * G;
  return 0.5 * (G.trace() - 2.0 * ZG.trace() + (ZG * Z.transpose()).trace()) +
         lambda * nuclear_norm(Z);
}

double reconstruction_objective(const DeltaMatrix& delta, const Matrix& Z, double lambda) {
  const double n_p = static_cast<double>(delta.values.rows() * delta.subspace_dim);
  const Matrix ZD = Z * delta.values;
  return 0.5 * (n_p - 2.0 * ZD.trace() + (ZD * Z.transpose()).trace()) + lambda * nuclear_norm(Z);
}

ClosedFormResult glrr_f_solve(const Matrix& G, double lambda) {
  if (!(lambda > 0.0)) throw InvalidConfig("lambda must be > 0, got " + std::to_string(lambda));
  const SymEig eig = sym_eig(G);
  const Index n = G.rows();
  const double zero_cut = 1e-12 * std::max(eig.eigenvalues(0), 0.0);

  Vector shrink = Vector::Zero(n);
  ClosedFormReport report;
  report.lambda = lambda;
  report.eigenvalues.assign(eig.eigenvalues.data(), eig.eigenvalues.data() + n);
  for (Index i = 0; i < n; ++i) {
    const double sigma = eig.eigenvalues(i) <= zero_cut ? 0.0 : eig.eigenvalues(i);
    if (sigma > lambda) {
      shrink(i) = 1.0 - lambda / sigma;
      ++report.kept_count;
    }
  }
  Matrix Z = symmetrized(eig.eigenvectors * shrink.asDiagonal() * eig.eigenvectors.transpose());
  report.objective = lowrank_objective(G, Z, lambda);
  report.reconstruction_objective = std::numeric_limits<double>::quiet_NaN();
  return {std::move(Z), std::move(report)};
}

ClosedFormResult glrr_f_solve(const DeltaMatrix& delta, double lambda) {
  ClosedFormResult out = glrr_f_solve(delta.values, lambda);
  out.report.reconstruction_objective = reconstruction_objective(delta, out.Z, lambda);
  return out;
}

ClosedFormResult glrr_f_solve(const KernelMatrix& K, double lambda) {
  ClosedFormResult out = glrr_f_solve(K.values, lambda);
  out.report.clamp_magnitude = K.clamp_magnitude;
  return out;
}

ClosedFormResult kglrr_solve(std::span<const GrassmannPoint> points, const KernelSpec& spec,
                             double lambda) {
  if (!(lambda > 0.0)) throw InvalidConfig("lambda must be > 0, got " + std::to_string(lambda));
  return glrr_f_solve(gram(points, spec), lambda);
}

}  // namespace glrr
