#include "glrr/admm.hpp"

#include <algorithm>
#include <cmath>

#include "glrr/errors.hpp"

namespace glrr {

void AdmmConfig::validate() const {
  if (!(lambda > 0.0)) throw InvalidConfig("lambda must be > 0");
  if (!(mu0 > 0.0)) throw InvalidConfig("mu0 must be > 0");
  if (!(rho0 >= 1.0)) throw InvalidConfig("rho0 must be >= 1");
  if (!(mu_max >= mu0)) throw InvalidConfig("mu_max must be >= mu0");
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw InvalidConfig("eps1 and eps2 must be > 0");
  if (max_iters < 0) throw InvalidConfig("max_iters must be >= 0");
  if (eta && !(*eta > 0.0)) throw InvalidConfig("eta must be > 0");
}

double slice_frobenius(const Matrix& coef, const Matrix& delta) {
  const double sq = (delta * coef).cwiseProduct(coef).sum();
  return std::sqrt(std::max(sq, 0.0));
}

namespace {

void shrink_column(Index i, const Matrix& W, const Matrix& DW, double mu, Matrix& out) {
  const double m = std::sqrt(std::max(W.col(i).dot(DW.col(i)), 0.0));
  if (m < 1.0 / mu) {
    out.col(i).setZero();
  } else {
    out.col(i) = (1.0 - 1.0 / (m * mu)) * W.col(i);
  }
}

Matrix shrink_input(const Matrix& Z, const Matrix& Xicoef, double mu) {
  const Index n = Z.rows();
  return (Matrix::Identity(n, n) - Z) + Xicoef / mu;
}

struct Thresholded {
  Matrix value;
  double nuclear = 0.0;
};

Thresholded svt_with_norm(const Matrix& M, double tau) {
  if (!(tau >= 0.0)) throw InvalidInput("svt: tau must be >= 0");
  const ThinSvd svd = thin_svd(M);
  const Vector s = (svd.S.array() - tau).cwiseMax(0.0).matrix();
  return {svd.U * s.asDiagonal() * svd.V.transpose(), s.sum()};
}

}  // namespace

Matrix e_step(const Matrix& Z, const Matrix& Xicoef, double mu, const Matrix& delta) {
  const Matrix W = shrink_input(Z, Xicoef, mu);
  const Matrix DW = delta * W;
  Matrix out(W.rows(), W.cols());
#pragma omp parallel for
  for (Index i = 0; i < W.cols(); ++i) shrink_column(i, W, DW, mu, out);
  return out;
}

namespace reference {

Matrix e_step(const Matrix& Z, const Matrix& Xicoef, double mu, const Matrix& delta) {
  const Matrix W = shrink_input(Z, Xicoef, mu);
  const Matrix DW = delta * W;
  Matrix out(W.rows(), W.cols());
  for (Index i = 0; i < W.cols(); ++i) shrink_column(i, W, DW, mu, out);
  return out;
}

}  // namespace reference

Matrix z_gradient(const Matrix& Z, const Matrix& Ecoef, const Matrix& Xicoef, double mu,
                  const Matrix& delta) {
  const Matrix phi = Xicoef.transpose() * delta;
  const Matrix psi = Ecoef.transpose() * delta;
  // Column i of Z reconstructs slice i, so the quadratic term differentiates to Delta Z.
  return mu * (delta * Z) - mu * (delta - psi + phi / mu).transpose();
}

Matrix z_step(const Matrix& Z, const Matrix& Ecoef, const Matrix& Xicoef, double mu, double eta,
              double lambda, const Matrix& delta) {
  const Matrix arg = Z - z_gradient(Z, Ecoef, Xicoef, mu, delta) / (eta * mu);
  return svt(arg, lambda / (eta * mu));
}

Matrix svt(const Matrix& M, double tau) { return svt_with_norm(M, tau).value; }

double rho_rule(double change, const AdmmConfig& config) {
  return change <= config.eps2 ? config.rho0 : 1.0;
}

double mu_update(double mu, double rho, double mu_max) { return std::min(rho * mu, mu_max); }

AdmmResult admm_solve(const DeltaMatrix& delta, const AdmmConfig& config,
                      const AdmmObserver& observer) {
  config.validate();
  const Matrix& D = delta.values;
  const Index n = D.rows();
  const double sigma_max = sym_eig(D).eigenvalues(0);
  if (!(sigma_max > 0.0)) throw InvalidInput("admm_solve: Delta has no positive eigenvalue");

  AdmmReport report;
  report.eta = config.eta.value_or(1.02 * sigma_max);
  if (!(report.eta > sigma_max)) {
    throw InvalidConfig("eta must exceed sigma_max(Delta) = " + std::to_string(sigma_max));
  }
  report.data_norm = std::sqrt(sigma_max);
  const double eta = report.eta;
  const double sqrt_eta = std::sqrt(eta);
  const Matrix I = Matrix::Identity(n, n);

  AdmmState s{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n), config.mu0, 0};

  for (int k = 0; k < config.max_iters; ++k) {
    const double mu = s.mu;
    Matrix E_next = e_step(s.Z, s.Xicoef, mu, D);
    Matrix Z_next;
    double nuclear = 0.0;
    {
      const Matrix arg = s.Z - z_gradient(s.Z, E_next, s.Xicoef, mu, D) / (eta * mu);
      Thresholded t = svt_with_norm(arg, config.lambda / (eta * mu));
      Z_next = std::move(t.value);
      nuclear = t.nuclear;
    }
    const Matrix residual = (I - Z_next) - E_next;
    s.Xicoef += mu * residual;

    const double primal = slice_frobenius(residual, D) / report.data_norm;
    const double change = mu / report.data_norm *
                          std::max(sqrt_eta * (Z_next - s.Z).norm(),
                                   slice_frobenius(E_next - s.Ecoef, D));
    const double mu_next = mu_update(mu, rho_rule(change, config), config.mu_max);

    if (!Z_next.allFinite() || !E_next.allFinite() || !s.Xicoef.allFinite() ||
        !std::isfinite(primal) || !std::isfinite(change)) {
      throw NumericalDivergence("admm_solve: non-finite iterate at iteration " +
                                std::to_string(k + 1));
    }

    double l21 = 0.0;
    const Matrix DE = D * E_next;
    for (Index i = 0; i < n; ++i) l21 += std::sqrt(std::max(E_next.col(i).dot(DE.col(i)), 0.0));

    report.mu_history.push_back(mu);
    report.primal_residual_history.push_back(primal);
    report.change_history.push_back(change);
    report.objective_history.push_back(l21 + config.lambda * nuclear);

    s.Z = std::move(Z_next);
    s.Ecoef = std::move(E_next);
    s.mu = mu_next;
    s.iter = k + 1;
    report.iterations = s.iter;
    if (observer) observer(s);

    if (primal <= config.eps1 && change <= config.eps2) {
      report.converged = true;
      break;
    }
  }
  return {std::move(s.Z), std::move(s.Ecoef), std::move(report)};
}

}  // namespace glrr
