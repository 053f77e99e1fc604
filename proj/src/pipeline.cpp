#include "glrr/pipeline.hpp"

#include "glrr/errors.hpp"

namespace glrr {

Method parse_method(std::string_view name) {
  if (name == "glrr-f") return Method::glrr_f;
  if (name == "glrr-21") return Method::glrr_21;
  if (name == "kglrr") return Method::kglrr;
  throw InvalidConfig("unknown method '" + std::string(name) + "'");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::glrr_f: return "glrr-f";
    case Method::glrr_21: return "glrr-21";
    case Method::kglrr: return "kglrr";
  }
  return "unknown";
}

double block_score(const Matrix& W, std::span<const int> labels) {
  double within = 0.0;
  double total = 0.0;
  for (Index j = 0; j < W.cols(); ++j) {
    for (Index i = 0; i < W.rows(); ++i) {
      total += W(i, j);
      if (labels[i] == labels[j]) within += W(i, j);
    }
  }
  return total > 0.0 ? within / total : 1.0;
}

PipelineResult cluster_pipeline(std::span<const GrassmannPoint> points, const MethodParams& params,
                                 const NcutConfig& ncut_cfg) {
  ncut_cfg.validate();
  if (!(params.lambda > 0.0)) throw InvalidConfig("lambda must be > 0");

  PipelineResult out;
  out.diagnostics.method = params.method;
  out.diagnostics.lambda = params.lambda;

  switch (params.method) {
    case Method::glrr_f: {
      ClosedFormResult r = glrr_f_solve(build_delta(points), params.lambda);
      out.Z = std::move(r.Z);
      out.diagnostics.closed_form = std::move(r.report);
      break;
    }
    case Method::kglrr: {
      ClosedFormResult r = kglrr_solve(points, params.kernel, params.lambda);
      out.Z = std::move(r.Z);
      out.diagnostics.clamp_magnitude = r.report.clamp_magnitude;
      out.diagnostics.closed_form = std::move(r.report);
      break;
    }
    case Method::glrr_21: {
      AdmmConfig cfg = params.admm;
      cfg.lambda = params.lambda;
      AdmmResult r = admm_solve(build_delta(points), cfg);
      out.Z = std::move(r.Z);
      out.diagnostics.admm = std::move(r.report);
      break;
    }
  }

  const Affinity affinity = affinity_from_z(out.Z);
  out.labels = ncut(affinity, ncut_cfg);
  out.diagnostics.rank_z = numerical_rank(out.Z, 1e-10);
  out.diagnostics.block_score = block_score(affinity.W, out.labels.labels);
  return out;
}

}  // namespace glrr
