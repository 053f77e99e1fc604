#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "glrr/admm.hpp"
#include "glrr/closed_form.hpp"
#include "glrr/clustering.hpp"
#include "glrr/kernels.hpp"

namespace glrr {

enum class Method { glrr_f, glrr_21, kglrr };

/// Accepts "glrr-f", "glrr-21" and "kglrr".
Method parse_method(std::string_view name);
std::string to_string(Method method);

struct MethodParams {
  Method method = Method::glrr_f;
  double lambda = 0.1;
  KernelSpec kernel;  // kglrr only
  AdmmConfig admm;    // glrr-21 only; its lambda is overridden by `lambda`
};

struct PipelineDiagnostics {
  Method method = Method::glrr_f;
  double lambda = 0.0;
  std::optional<ClosedFormReport> closed_form;
  std::optional<AdmmReport> admm;
  double clamp_magnitude = 0.0;
  Index rank_z = 0;  // numerical rank of Z at relative tolerance 1e-10
  /// Fraction of affinity mass whose endpoints share a predicted label.
  double block_score = 0.0;
};

struct PipelineResult {
  ClusterLabels labels;
  Matrix Z;
  PipelineDiagnostics diagnostics;
};

/// Solver -> affinity_from_z -> ncut.
PipelineResult cluster_pipeline(std::span<const GrassmannPoint> points, const MethodParams& params,
                                 const NcutConfig& ncut_cfg);

/// Share of total affinity between points with equal labels (1 when W = 0).
double block_score(const Matrix& W, std::span<const int> labels);

}  // namespace glrr
