#include <algorithm>
#include <cmath>

#include "glrr/admm.hpp"
#include "glrr/errors.hpp"

namespace glrr::reference {

namespace {

double inner(const Matrix& A, const Matrix& B) { return A.cwiseProduct(B).sum(); }

double tensor_norm(const std::vector<Matrix>& slices) {
  double sq = 0.0;
  for (const auto& S : slices) sq += S.squaredNorm();
  return std::sqrt(sq);
}

}  // namespace

DenseResult dense_admm(std::span<const GrassmannPoint> points, const AdmmConfig& config,
                       const std::function<void(const DenseState&)>& observer) {
  config.validate();
  require_consistent(points, 2);
  const auto n = static_cast<Index>(points.size());
  const Index d = points.front().ambient_dim();
  if (static_cast<double>(n) * static_cast<double>(d) * static_cast<double>(d) > 2e6) {
    throw OracleTooLarge("dense_admm: N d^2 exceeds 2e6");
  }

  std::vector<Matrix> P;
  P.reserve(points.size());
  for (const auto& X : points) P.push_back(project_embed(X));

  // Gram matrix of the mode-3 matricization.
  Matrix gram(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) gram(i, j) = inner(P[i], P[j]);
  const double sigma_max = sym_eig(gram).eigenvalues(0);

  AdmmReport report;
  report.eta = config.eta.value_or(1.02 * sigma_max);
  if (!(report.eta > sigma_max)) throw InvalidConfig("eta must exceed sigma_max");
  report.data_norm = std::sqrt(sigma_max);
  const double eta = report.eta;

  DenseState s;
  s.Z = Matrix::Zero(n, n);
  s.E.assign(points.size(), Matrix::Zero(d, d));
  s.Xi.assign(points.size(), Matrix::Zero(d, d));
  s.mu = config.mu0;

  auto reconstruct = [&](const Matrix& Z, Index i) {
    Matrix acc = Matrix::Zero(d, d);
    for (Index j = 0; j < n; ++j) acc += Z(j, i) * P[j];
    return acc;
  };

  for (int k = 0; k < config.max_iters; ++k) {
    const double mu = s.mu;

    std::vector<Matrix> C(points.size());
    std::vector<Matrix> E_next(points.size());
    for (Index i = 0; i < n; ++i) {
      C[i] = P[i] - reconstruct(s.Z, i);
      const Matrix W = C[i] + s.Xi[i] / mu;
      const double m = W.norm();
      E_next[i] = m < 1.0 / mu ? Matrix::Zero(d, d) : Matrix((1.0 - 1.0 / (m * mu)) * W);
    }

    // d/dz_ji of <xi, X - X x_3 Z - E> + mu/2 ||X - X x_3 Z - E||^2.
    Matrix grad(n, n);
    for (Index i = 0; i < n; ++i) {
      const Matrix slack = C[i] - E_next[i];
      for (Index j = 0; j < n; ++j) grad(j, i) = -inner(s.Xi[i], P[j]) - mu * inner(P[j], slack);
    }
    const Matrix Z_next = svt(s.Z - grad / (eta * mu), config.lambda / (eta * mu));

    std::vector<Matrix> R(points.size());
    std::vector<Matrix> dE(points.size());
    double l21 = 0.0;
    for (Index i = 0; i < n; ++i) {
      R[i] = P[i] - reconstruct(Z_next, i) - E_next[i];
      s.Xi[i] += mu * R[i];
      dE[i] = E_next[i] - s.E[i];
      l21 += E_next[i].norm();
    }
    const double primal = tensor_norm(R) / report.data_norm;
    const double change =
        mu / report.data_norm * std::max(std::sqrt(eta) * (Z_next - s.Z).norm(), tensor_norm(dE));
    const double mu_next = mu_update(mu, rho_rule(change, config), config.mu_max);
    if (!Z_next.allFinite() || !std::isfinite(primal)) {
      throw NumericalDivergence("dense_admm: non-finite iterate");
    }

    report.mu_history.push_back(mu);
    report.primal_residual_history.push_back(primal);
    report.change_history.push_back(change);
    report.objective_history.push_back(l21 + config.lambda * nuclear_norm(Z_next));

    s.Z = Z_next;
    s.E = std::move(E_next);
    s.mu = mu_next;
    s.iter = k + 1;
    report.iterations = s.iter;
    if (observer) observer(s);

    if (primal <= config.eps1 && change <= config.eps2) {
      report.converged = true;
      break;
    }
  }
  return {std::move(s.Z), std::move(s.E), std::move(report)};
}

}  // namespace glrr::reference
