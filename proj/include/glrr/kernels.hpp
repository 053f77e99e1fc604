#pragma once

#include <span>
#include <string>
#include <string_view>

#include "glrr/linalg.hpp"
#include "glrr/manifold.hpp"

namespace glrr {

enum class KernelKind { projection, cc_max, cc_sum, ccp };

/// Grassmann kernel selection. `alpha` is the blend weight of the
/// canonical-correlation part and is only read for KernelKind::ccp.
struct KernelSpec {
  KernelKind kind = KernelKind::projection;
  double alpha = 0.5;

  /// Throws InvalidConfig for ccp with alpha outside (0, 1).
  void validate() const;
};

/// Accepts "projection", "cc-max", "cc-sum" and "ccp".
KernelKind parse_kernel_kind(std::string_view name);
std::string to_string(KernelKind kind);

/// Gram matrix after PSD repair. `clamp_magnitude` is the magnitude of the
/// most negative eigenvalue removed by the repair, 0 when none was needed.
struct KernelMatrix {
  Matrix values;
  KernelSpec spec;
  bool clamped = false;
  double clamp_magnitude = 0.0;
};

/// Cosines of the principal angles (singular values of X1^T X2), descending,
/// clamped to [0, 1].
Vector principal_angle_cosines(const GrassmannPoint& X1, const GrassmannPoint& X2);

double k_projection(const GrassmannPoint& X1, const GrassmannPoint& X2);

enum class CcVariant { max, sum };
double k_cc(const GrassmannPoint& X1, const GrassmannPoint& X2, CcVariant variant);

/// alpha * k_cc(sum) + (1 - alpha) * k_projection.
double k_ccp(const GrassmannPoint& X1, const GrassmannPoint& X2, double alpha);

double kernel_value(const KernelSpec& spec, const GrassmannPoint& X1, const GrassmannPoint& X2);

/// Raw kernel entries, upper triangle evaluated in parallel and mirrored.
Matrix gram_entries(std::span<const GrassmannPoint> points, const KernelSpec& spec);

/// gram_entries followed by psd_clamp. Needs N >= 2 points on the same G(p, d).
KernelMatrix gram(std::span<const GrassmannPoint> points, const KernelSpec& spec);

struct PsdClamp {
  Matrix values;
  double magnitude = 0.0;
};

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues truncated to 0).
/// Inputs whose smallest eigenvalue is >= -1e-8 * largest are returned as is.
PsdClamp psd_clamp(const Matrix& K);

/// U D^{1/2} U^T; tiny negative eigenvalues are treated as zero.
Matrix kernel_sqrt(const Matrix& K);

namespace reference {
/// Serial evaluation of gram_entries, kept as the test and benchmark baseline.
Matrix gram_entries(std::span<const GrassmannPoint> points, const KernelSpec& spec);
}  // namespace reference

}  // namespace glrr
