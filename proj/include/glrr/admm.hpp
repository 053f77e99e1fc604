#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "glrr/closed_form.hpp"
#include "glrr/linalg.hpp"
#include "glrr/manifold.hpp"

namespace glrr {

// GLRR-21: min ||E||_{l2/l1} + lambda ||Z||_*  s.t.  X = X x_3 Z + E, solved by
// linearized ADM. Every slice of E and of the multiplier xi stays inside
// span{X_j X_j^T} when started from zero, so the solver carries them as N x N
// coefficient matrices: column i of Ecoef holds the weights of slice E(i).
// Frobenius norms and traces of slices then reduce to Delta-weighted forms,
// e.g. ||sum_j c_j X_j X_j^T||_F^2 = c^T Delta c, and nothing d x d is allocated.

struct AdmmConfig {
  double lambda = 0.0;
  double mu0 = 0.01;
  double rho0 = 1.9;
  double mu_max = 1e10;
  /// Proximal weight; must exceed sigma_max(Delta). Defaults to 1.02 * sigma_max(Delta).
  std::optional<double> eta;
  double eps1 = 1e-4;
  double eps2 = 1e-4;
  int max_iters = 500;

  void validate() const;
};

struct AdmmState {
  Matrix Z;
  Matrix Ecoef;
  Matrix Xicoef;
  double mu = 0.0;
  int iter = 0;
};

struct AdmmReport {
  int iterations = 0;
  bool converged = false;
  double eta = 0.0;
  double data_norm = 0.0;  // ||X|| = sqrt(sigma_max(Delta))
  std::vector<double> primal_residual_history;
  std::vector<double> change_history;  // mu^k/||X|| max{sqrt(eta)||dZ||, ||dE||}
  std::vector<double> objective_history;
  std::vector<double> mu_history;  // mu^k used by iteration k
};

struct AdmmResult {
  Matrix Z;
  Matrix Ecoef;
  AdmmReport report;
};

using AdmmObserver = std::function<void(const AdmmState&)>;

/// Runs until both stopping rules hold or max_iters is reached; in the latter
/// case the last iterate is returned with converged = false. Throws
/// NumericalDivergence on a non-finite iterate.
AdmmResult admm_solve(const DeltaMatrix& delta, const AdmmConfig& config,
                      const AdmmObserver& observer = {});

/// Slice-wise shrinkage of w_i = (e_i - Z_i) + Xi_i / mu with M_i = sqrt(w_i^T Delta w_i).
Matrix e_step(const Matrix& Z, const Matrix& Xicoef, double mu, const Matrix& delta);

/// Linearized proximal step: SVT of Z - grad f(Z) / (eta mu) at threshold lambda / (eta mu).
Matrix z_step(const Matrix& Z, const Matrix& Ecoef, const Matrix& Xicoef, double mu, double eta,
              double lambda, const Matrix& delta);

/// Gradient of the smooth part of the augmented Lagrangian in Z, with
/// Phi = Xicoef^T Delta and Psi = Ecoef^T Delta.
Matrix z_gradient(const Matrix& Z, const Matrix& Ecoef, const Matrix& Xicoef, double mu,
                  const Matrix& delta);

/// U diag(max(s - tau, 0)) V^T.
Matrix svt(const Matrix& M, double tau);

/// rho0 when the iterate-change quantity is <= eps2, otherwise 1.
double rho_rule(double change, const AdmmConfig& config);
double mu_update(double mu, double rho, double mu_max);

/// sqrt(sum_i c_i^T Delta c_i): Frobenius norm of the slices a coefficient matrix encodes.
double slice_frobenius(const Matrix& coef, const Matrix& delta);

namespace reference {

/// Serial E-step, baseline for the parallel one.
Matrix e_step(const Matrix& Z, const Matrix& Xicoef, double mu, const Matrix& delta);

struct DenseState {
  Matrix Z;
  std::vector<Matrix> E;   // d x d slices
  std::vector<Matrix> Xi;  // d x d slices
  double mu = 0.0;
  int iter = 0;
};

struct DenseResult {
  Matrix Z;
  std::vector<Matrix> E;
  AdmmReport report;
};

/// Literal tensor implementation of the same iteration on d x d x N slices.
/// Gradients are taken directly from slice inner products. Test oracle only;
/// throws OracleTooLarge when N d^2 > 2e6.
DenseResult dense_admm(std::span<const GrassmannPoint> points, const AdmmConfig& config,
                       const std::function<void(const DenseState&)>& observer = {});

}  // namespace reference

}  // namespace glrr
