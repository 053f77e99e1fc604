#include "glrr/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "glrr/errors.hpp"

namespace fs = std::filesystem;

namespace glrr {

namespace {

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file for reading", path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing", path.string());
  return out;
}

struct Token {
  std::string text;
  long column;
};

std::vector<Token> split_ws(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<long>(start + 1)});
  }
  return tokens;
}

double parse_double(const Token& tok, long line) {
  char* end = nullptr;
  const double v = std::strtod(tok.text.c_str(), &end);
  if (end == tok.text.c_str() || *end != '\0') {
    throw ParseError("invalid number '" + tok.text + "'", line, tok.column);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + tok.text + "'", line, tok.column);
  return v;
}

long parse_count(const Token& tok, long line) {
  char* end = nullptr;
  const long v = std::strtol(tok.text.c_str(), &end, 10);
  if (end == tok.text.c_str() || *end != '\0' || v < 0) {
    throw ParseError("invalid count '" + tok.text + "'", line, tok.column);
  }
  return v;
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& M) {
  out << M.rows() << ' ' << M.cols() << '\n';
  char buf[64];
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%a", M(i, j));
      if (j > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

void write_matrix(const fs::path& path, const Matrix& M) {
  auto out = open_out(path);
  write_matrix(out, M);
  if (!out) throw IoError("write failed", path.string());
}

Matrix parse_matrix(std::istream& in) {
  std::string line;
  long line_no = 0;
  std::vector<Token> header;
  while (header.empty()) {
    if (!std::getline(in, line)) throw ParseError("missing header", line_no + 1, 1);
    ++line_no;
    header = split_ws(line);
  }
  if (header.size() != 2) throw ParseError("header must be '<rows> <cols>'", line_no, 1);
  const long rows = parse_count(header[0], line_no);
  const long cols = parse_count(header[1], line_no);

  Matrix M(rows, cols);
  long row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (row >= rows) {
      throw ParseError("dimension mismatch: header declares " + std::to_string(rows) +
                           " rows, found more",
                       line_no, tokens.front().column);
    }
    if (static_cast<long>(tokens.size()) != cols) {
      throw ParseError("dimension mismatch: row " + std::to_string(row + 1) + " has " +
                           std::to_string(tokens.size()) + " values, header declares " +
                           std::to_string(cols),
                       line_no, tokens.front().column);
    }
    for (long j = 0; j < cols; ++j) M(row, j) = parse_double(tokens[j], line_no);
    ++row;
  }
  if (row != rows) {
    throw ParseError("dimension mismatch: header declares " + std::to_string(rows) +
                         " rows, found " + std::to_string(row),
                     line_no + 1, 1);
  }
  return M;
}

Matrix read_matrix(const fs::path& path) {
  auto in = open_in(path);
  try {
    return parse_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

void write_labels(const fs::path& path, std::span<const int> labels) {
  auto out = open_out(path);
  for (int l : labels) out << l << '\n';
  if (!out) throw IoError("write failed", path.string());
}

std::vector<int> read_labels(const fs::path& path) {
  auto in = open_in(path);
  std::vector<int> labels;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw ParseError(path.string() + ": expected one label per line", line_no, 1);
    char* end = nullptr;
    const long v = std::strtol(tokens[0].text.c_str(), &end, 10);
    if (*end != '\0' || end == tokens[0].text.c_str()) {
      throw ParseError(path.string() + ": invalid label '" + tokens[0].text + "'", line_no,
                       tokens[0].column);
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

Manifest load_manifest(const fs::path& path) {
  auto in = open_in(path);
  Manifest manifest;
  manifest.base_dir = path.parent_path();
  std::set<std::string> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    ManifestEntry entry;
    const auto tab = line.find('\t');
    entry.path = line.substr(0, tab);
    if (tab != std::string::npos) {
      const std::string label = line.substr(tab + 1);
      char* end = nullptr;
      const long v = std::strtol(label.c_str(), &end, 10);
      if (end == label.c_str() || *end != '\0' || v < 0) {
        throw ParseError(path.string() + ": invalid label '" + label + "'", line_no,
                         static_cast<long>(tab + 2));
      }
      entry.label = static_cast<int>(v);
    }
    if (entry.path.empty()) throw ParseError(path.string() + ": empty path", line_no, 1);
    if (!seen.insert(entry.path).second) {
      throw InvalidInput(path.string() + ": duplicate id '" + entry.path + "' on line " +
                         std::to_string(line_no));
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

void write_manifest(const fs::path& path, const std::vector<ManifestEntry>& entries) {
  auto out = open_out(path);
  for (const auto& e : entries) {
    out << e.path;
    if (e.label) out << '\t' << *e.label;
    out << '\n';
  }
  if (!out) throw IoError("write failed", path.string());
}

std::vector<ImageSet> load_dataset(const Manifest& manifest) {
  std::vector<ImageSet> sets;
  sets.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    const fs::path file = manifest.base_dir / e.path;
    if (!fs::exists(file)) throw IoError("missing data file", file.string());
    ImageSet set{e.path, e.label, read_matrix(file)};
    if (set.samples.size() == 0) throw InvalidInput(file.string() + ": empty sample matrix");
    if (!sets.empty() && set.samples.rows() != sets.front().samples.rows()) {
      throw InvalidInput(file.string() + ": ambient dimension " +
                         std::to_string(set.samples.rows()) + " differs from " +
                         std::to_string(sets.front().samples.rows()) + " of '" +
                         sets.front().id + "'");
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

GrassmannPoint build_point(const ImageSet& set, Index p, bool standardize) {
  if (!standardize) return orthonormalize(set.samples, p);
  Matrix S = set.samples;
  for (Index j = 0; j < S.cols(); ++j) {
    const double mean = S.col(j).mean();
    S.col(j).array() -= mean;
    const double sd = std::sqrt(S.col(j).squaredNorm() / static_cast<double>(S.rows()));
    if (sd > 0.0) S.col(j) /= sd;
  }
  return orthonormalize(S, p);
}

ResultPaths save_results(const fs::path& dir, const Matrix& Z, std::span<const int> labels,
                         const ReportEntries& report) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory", dir.string());
  ResultPaths paths{dir / "Z.mat", dir / "labels.txt", dir / "report.txt"};
  write_matrix(paths.z, Z);
  write_labels(paths.labels, labels);
  auto out = open_out(paths.report);
  for (const auto& [key, value] : report) out << key << '=' << value << '\n';
  if (!out) throw IoError("write failed", paths.report.string());
  return paths;
}

ReportEntries read_report(const fs::path& path) {
  auto in = open_in(path);
  ReportEntries entries;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path.string() + ": expected key=value", line_no, 1);
    entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return entries;
}

}  // namespace glrr
