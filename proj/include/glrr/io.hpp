#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glrr/linalg.hpp"
#include "glrr/manifold.hpp"

namespace glrr {

// Matrix files: a "<rows> <cols>" header line, then one line per row with
// `cols` whitespace-separated values. Writes use hexadecimal floating point
// ("%a"), so a round trip is bit-exact; reads also accept plain decimal.

void write_matrix(std::ostream& out, const Matrix& M);
void write_matrix(const std::filesystem::path& path, const Matrix& M);

/// Throws ParseError (with line and column) on malformed text or a row count
/// that disagrees with the header.
Matrix parse_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

/// One integer per line.
void write_labels(const std::filesystem::path& path, std::span<const int> labels);
std::vector<int> read_labels(const std::filesystem::path& path);

/// One entry per line: "<relative-path>\t<label>"; '#' lines and blank lines
/// are skipped. The label column may be omitted for unlabeled sets.
struct ManifestEntry {
  std::string path;
  std::optional<int> label;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;
};

Manifest load_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);

/// A set of vectorized samples (columns) that becomes one Grassmann point.
struct ImageSet {
  std::string id;
  std::optional<int> label;
  Matrix samples;  // d x P
};

/// Reads every referenced matrix in manifest order. All sets must share d.
std::vector<ImageSet> load_dataset(const Manifest& manifest);

/// Span of the top-p left singular vectors of the samples. With `standardize`
/// each column is first shifted to mean zero and scaled to unit variance.
GrassmannPoint build_point(const ImageSet& set, Index p, bool standardize = false);

using ReportEntries = std::vector<std::pair<std::string, std::string>>;

struct ResultPaths {
  std::filesystem::path z;
  std::filesystem::path labels;
  std::filesystem::path report;
};

/// Writes Z.mat, labels.txt and report.txt ("key=value" lines) into `dir`.
ResultPaths save_results(const std::filesystem::path& dir, const Matrix& Z,
                         std::span<const int> labels, const ReportEntries& report);
ReportEntries read_report(const std::filesystem::path& path);

}  // namespace glrr
