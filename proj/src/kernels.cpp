#include "glrr/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "glrr/errors.hpp"

namespace glrr {

void KernelSpec::validate() const {
  if (kind == KernelKind::ccp && !(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidConfig("ccp kernel needs 0 < alpha < 1, got " + std::to_string(alpha));
  }
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "projection") return KernelKind::projection;
  if (name == "cc-max") return KernelKind::cc_max;
  if (name == "cc-sum") return KernelKind::cc_sum;
  if (name == "ccp") return KernelKind::ccp;
  throw InvalidConfig("unknown kernel '" + std::string(name) + "'");
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::projection: return "projection";
    case KernelKind::cc_max: return "cc-max";
    case KernelKind::cc_sum: return "cc-sum";
    case KernelKind::ccp: return "ccp";
  }
  return "unknown";
}

namespace {

Vector cosines_of(const Matrix& cross) {
  Vector s = Eigen::JacobiSVD<Matrix>(cross).singularValues();
  for (Index i = 0; i < s.size(); ++i) s(i) = std::clamp(s(i), 0.0, 1.0);
  return s;
}

}  // namespace

Vector principal_angle_cosines(const GrassmannPoint& X1, const GrassmannPoint& X2) {
  require_same_shape(X1, X2);
  return cosines_of(X1.basis().transpose() * X2.basis());
}

double k_projection(const GrassmannPoint& X1, const GrassmannPoint& X2) {
  require_same_shape(X1, X2);
  return (X1.basis().transpose() * X2.basis()).squaredNorm();
}

double k_cc(const GrassmannPoint& X1, const GrassmannPoint& X2, CcVariant variant) {
  const Vector c = principal_angle_cosines(X1, X2);
  return variant == CcVariant::max ? c(0) : c.sum();
}

double k_ccp(const GrassmannPoint& X1, const GrassmannPoint& X2, double alpha) {
  KernelSpec{KernelKind::ccp, alpha}.validate();
  require_same_shape(X1, X2);
  const Matrix cross = X1.basis().transpose() * X2.basis();
  return alpha * cosines_of(cross).sum() + (1.0 - alpha) * cross.squaredNorm();
}

double kernel_value(const KernelSpec& spec, const GrassmannPoint& X1, const GrassmannPoint& X2) {
  switch (spec.kind) {
    case KernelKind::projection: return k_projection(X1, X2);
    case KernelKind::cc_max: return k_cc(X1, X2, CcVariant::max);
    case KernelKind::cc_sum: return k_cc(X1, X2, CcVariant::sum);
    case KernelKind::ccp: return k_ccp(X1, X2, spec.alpha);
  }
  throw InvalidConfig("unknown kernel kind");
}

Matrix gram_entries(std::span<const GrassmannPoint> points, const KernelSpec& spec) {
  spec.validate();
  require_consistent(points, 2);
  const auto n = static_cast<Index>(points.size());
  Matrix K(n, n);
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = kernel_value(spec, points[i], points[j]);
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

namespace reference {

Matrix gram_entries(std::span<const GrassmannPoint> points, const KernelSpec& spec) {
  spec.validate();
  require_consistent(points, 2);
  const auto n = static_cast<Index>(points.size());
  Matrix K(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = kernel_value(spec, points[i], points[j]);
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

}  // namespace reference

KernelMatrix gram(std::span<const GrassmannPoint> points, const KernelSpec& spec) {
  PsdClamp repaired = psd_clamp(gram_entries(points, spec));
  KernelMatrix out;
  out.values = std::move(repaired.values);
  out.spec = spec;
  out.clamped = repaired.magnitude > 0.0;
  out.clamp_magnitude = repaired.magnitude;
  return out;
}

PsdClamp psd_clamp(const Matrix& K) {
  const SymEig eig = sym_eig(K);
  const double largest = std::max(eig.eigenvalues(0), 0.0);
  const double smallest = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (smallest >= -1e-8 * largest) return {K, 0.0};

  const Vector kept = eig.eigenvalues.cwiseMax(0.0);
  const Matrix rebuilt = eig.eigenvectors * kept.asDiagonal() * eig.eigenvectors.transpose();
  return {symmetrized(rebuilt), -smallest};
}

Matrix kernel_sqrt(const Matrix& K) {
  const SymEig eig = sym_eig(K);
  const Vector root = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return symmetrized(eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.transpose());
}

}  // namespace glrr
