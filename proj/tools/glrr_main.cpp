// Command-line front end: generate synthetic Grassmann data, cluster a point
// set with GLRR-F / GLRR-21 / KGLRR + NCut, and score label files.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glrr/errors.hpp"
#include "glrr/evaluation.hpp"
#include "glrr/io.hpp"
#include "glrr/pipeline.hpp"
#include "glrr/rng.hpp"
#include "glrr/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;

std::string fmt_double(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct SynthOptions {
  glrr::SynthSpec spec;
  double outliers = 0.0;
  std::string out;
};

int run_synth(const SynthOptions& opt) {
  glrr::SynthData data = glrr::synth_union(opt.spec);
  if (opt.outliers > 0.0) {
    glrr::replace_with_outliers(data.points, opt.outliers, glrr::Rng::derive(opt.spec.seed, 1));
  }

  const fs::path dir(opt.out);
  fs::create_directories(dir / "points");
  std::vector<glrr::ManifestEntry> entries;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "points/p%04zu.mat", i);
    glrr::write_matrix(dir / name, data.points[i].basis());
    entries.push_back({name, data.labels.labels[i]});
  }
  glrr::write_manifest(dir / "manifest.tsv", entries);
  glrr::write_labels(dir / "truth.txt", data.labels.labels);
  std::cout << "wrote " << data.points.size() << " points on G(" << opt.spec.p << ","
            << opt.spec.d << ") in " << opt.spec.clusters << " clusters to " << dir.string()
            << "\n";
  return kExitOk;
}

struct ClusterOptions {
  std::string data;
  std::string method = "glrr-f";
  std::vector<double> lambdas{0.1};
  std::string kernel = "projection";
  double alpha = 0.5;
  long p = 0;
  bool standardize = false;
  int clusters = 0;
  std::string truth;
  std::uint64_t seed = 0;
  int restarts = 20;
  int kmeans_iters = 300;
  glrr::AdmmConfig admm;
  double eta = 0.0;
  std::string out;
};

int run_cluster(ClusterOptions opt) {
  glrr::MethodParams params;
  params.method = glrr::parse_method(opt.method);
  params.kernel = {glrr::parse_kernel_kind(opt.kernel), opt.alpha};
  params.kernel.validate();
  params.admm = opt.admm;
  if (opt.eta > 0.0) params.admm.eta = opt.eta;

  const glrr::Manifest manifest = glrr::load_manifest(opt.data);
  const auto sets = glrr::load_dataset(manifest);
  if (sets.size() < 2) throw glrr::InvalidInput("dataset needs at least 2 point sets");
  const glrr::Index p = opt.p > 0 ? opt.p : sets.front().samples.cols();
  std::vector<glrr::GrassmannPoint> points;
  points.reserve(sets.size());
  for (const auto& s : sets) points.push_back(glrr::build_point(s, p, opt.standardize));

  std::vector<int> truth;
  if (!opt.truth.empty()) {
    truth = glrr::read_labels(opt.truth);
  } else if (std::all_of(sets.begin(), sets.end(), [](const auto& s) { return s.label.has_value(); })) {
    for (const auto& s : sets) truth.push_back(*s.label);
  }
  if (!truth.empty() && truth.size() != points.size()) {
    throw glrr::InvalidInput("truth has " + std::to_string(truth.size()) + " labels for " +
                             std::to_string(points.size()) + " points");
  }

  glrr::NcutConfig ncut_cfg;
  ncut_cfg.clusters = opt.clusters;
  if (ncut_cfg.clusters == 0) {
    if (truth.empty()) throw glrr::InvalidConfig("--clusters is required without truth labels");
    ncut_cfg.clusters = static_cast<int>(std::set<int>(truth.begin(), truth.end()).size());
  }
  ncut_cfg.kmeans_restarts = opt.restarts;
  ncut_cfg.kmeans_max_iters = opt.kmeans_iters;
  ncut_cfg.seed = opt.seed;

  std::vector<double> lambdas = opt.lambdas;
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  const fs::path out_dir(opt.out);
  std::string table = "method\tlambda\titerations\tconverged\taccuracy\n";
  std::printf("%-8s %-12s %-10s %-9s %s\n", "method", "lambda", "iterations", "converged",
              "accuracy");
  for (double lambda : lambdas) {
    params.lambda = lambda;
    const glrr::PipelineResult res = glrr::cluster_pipeline(points, params, ncut_cfg);
    const auto& diag = res.diagnostics;

    const int iterations = diag.admm ? diag.admm->iterations : 0;
    const bool converged = diag.admm ? diag.admm->converged : true;
    std::string acc = "NA";
    std::string acc_display = "NA";
    if (!truth.empty()) {
      const double a = glrr::accuracy(res.labels.labels, truth).accuracy;
      acc = fmt_double(a);
      acc_display = fmt_double(a, "%.4f") + " (" + fmt_double(100.0 * a, "%.2f") + "%)";
    }

    const glrr::ReportEntries report{
        {"method", glrr::to_string(params.method)},
        {"lambda", fmt_double(lambda)},
        {"iterations", std::to_string(iterations)},
        {"converged", converged ? "true" : "false"},
        {"accuracy", acc},
        {"clamp_magnitude", fmt_double(diag.clamp_magnitude)},
        {"rank_Z", std::to_string(diag.rank_z)},
        {"kernel", params.method == glrr::Method::kglrr ? glrr::to_string(params.kernel.kind) : "NA"},
        {"clusters", std::to_string(ncut_cfg.clusters)},
        {"block_score", fmt_double(diag.block_score)},
    };
    const fs::path target =
        lambdas.size() == 1 ? out_dir : out_dir / ("lambda_" + fmt_double(lambda, "%g"));
    glrr::save_results(target, res.Z, res.labels.labels, report);

    std::printf("%-8s %-12g %-10d %-9s %s\n", glrr::to_string(params.method).c_str(), lambda,
                iterations, converged ? "true" : "false", acc_display.c_str());
    table += glrr::to_string(params.method) + "\t" + fmt_double(lambda) + "\t" +
             std::to_string(iterations) + "\t" + (converged ? "true" : "false") + "\t" + acc + "\n";
  }
  if (lambdas.size() > 1) {
    std::ofstream(out_dir / "sweep.txt") << table;
  }
  return kExitOk;
}

// CLI11 only reads config files attached to the top-level app, so the
// cluster subcommand's --config file is expanded into "--key=value" arguments
// here. Keys already given on the command line are skipped.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw glrr::IoError("cannot open config file", config_path);
  auto given = [&](const std::string& key) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw glrr::ParseError(config_path + ": expected key=value", line_no, static_cast<long>(first + 1));
    }
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key == "config") continue;
    if (!given(key)) extra.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int run_eval(const std::string& pred_path, const std::string& truth_path) {
  const std::vector<int> pred = glrr::read_labels(pred_path);
  const std::vector<int> truth = glrr::read_labels(truth_path);
  const glrr::EvalReport rep = glrr::accuracy(pred, truth);
  std::printf("accuracy: %.4f (%.2f%%)\n", rep.accuracy, 100.0 * rep.accuracy);
  std::printf("accuracy_exact: %s\n", fmt_double(rep.accuracy).c_str());
  std::printf("matched: %ld / %zu\n", rep.matched, truth.size());
  std::printf("matching (predicted -> true):");
  for (const auto& [p, t] : rep.matching) std::printf(" %d->%d", p, t);
  std::printf("\nconfusion (rows predicted, cols true):\n");
  for (Eigen::Index i = 0; i < rep.confusion.rows(); ++i) {
    for (Eigen::Index j = 0; j < rep.confusion.cols(); ++j) {
      std::printf(j == 0 ? "%d" : "\t%d", rep.confusion(i, j));
    }
    std::printf("\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank representation clustering on Grassmann manifolds"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic union-of-subspaces dataset");
  synth_cmd->add_option("--clusters", synth.spec.clusters, "Number of clusters")->capture_default_str();
  synth_cmd->add_option("--per-cluster", synth.spec.per_cluster, "Points per cluster")->capture_default_str();
  synth_cmd->add_option("--d", synth.spec.d, "Ambient dimension")->capture_default_str();
  synth_cmd->add_option("--p", synth.spec.p, "Subspace dimension")->capture_default_str();
  synth_cmd->add_option("--sigma", synth.spec.noise_sigma, "Noise standard deviation")->capture_default_str();
  synth_cmd->add_option("--min-sep", synth.spec.min_separation,
                        "Smallest principal angle between centers, degrees")->capture_default_str();
  synth_cmd->add_option("--outliers", synth.outliers, "Fraction of points replaced by random subspaces")
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", synth.spec.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  ClusterOptions cl;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a dataset and write Z, labels and a report");
  std::string config_path;
  cluster_cmd->add_option("--config", config_path, "key=value file; flags take precedence");
  cluster_cmd->add_option("--data", cl.data, "Manifest file")->required();
  cluster_cmd->add_option("--method", cl.method, "glrr-f, glrr-21 or kglrr")->capture_default_str();
  cluster_cmd->add_option("--lambda", cl.lambdas, "Lambda or comma-separated sweep")->delimiter(',');
  cluster_cmd->add_option("--kernel", cl.kernel, "projection, cc-max, cc-sum or ccp")->capture_default_str();
  cluster_cmd->add_option("--alpha", cl.alpha, "ccp blend weight")->capture_default_str();
  cluster_cmd->add_option("--p", cl.p, "Subspace dimension (default: columns of the first set)");
  cluster_cmd->add_flag("--standardize", cl.standardize, "Standardize each sample column first");
  cluster_cmd->add_option("--clusters", cl.clusters, "Number of clusters (default: from truth)");
  cluster_cmd->add_option("--truth", cl.truth, "Truth label file (default: manifest labels)");
  cluster_cmd->add_option("--seed", cl.seed, "k-means seed")->capture_default_str();
  cluster_cmd->add_option("--restarts", cl.restarts, "k-means restarts")->capture_default_str();
  cluster_cmd->add_option("--kmeans-iters", cl.kmeans_iters, "k-means iteration cap")->capture_default_str();
  cluster_cmd->add_option("--mu0", cl.admm.mu0)->capture_default_str();
  cluster_cmd->add_option("--rho0", cl.admm.rho0)->capture_default_str();
  cluster_cmd->add_option("--mu-max", cl.admm.mu_max)->capture_default_str();
  cluster_cmd->add_option("--eta", cl.eta, "Proximal weight (default 1.02 sigma_max(Delta))");
  cluster_cmd->add_option("--eps1", cl.admm.eps1)->capture_default_str();
  cluster_cmd->add_option("--eps2", cl.admm.eps2)->capture_default_str();
  cluster_cmd->add_option("--max-iters", cl.admm.max_iters)->capture_default_str();
  cluster_cmd->add_option("--out", cl.out, "Results directory")->required();

  std::string pred_path, truth_path;
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted labels against truth");
  eval_cmd->add_option("--pred", pred_path, "Predicted label file")->required();
  eval_cmd->add_option("--truth", truth_path, "Truth label file")->required();

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const glrr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*cluster_cmd) return run_cluster(cl);
    if (*eval_cmd) return run_eval(pred_path, truth_path);
  } catch (const glrr::NumericalDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const glrr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
