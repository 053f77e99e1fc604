#pragma once

#include <stdexcept>
#include <string>

namespace glrr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// A matrix did not have the numerical rank needed to extract a p-dimensional basis.
class RankDeficient : public InvalidInput {
 public:
  RankDeficient(long required, long achieved)
      : InvalidInput("rank-deficient input: required rank " + std::to_string(required) +
                     ", achieved " + std::to_string(achieved)),
        required_(required),
        achieved_(achieved) {}

  long required() const { return required_; }
  long achieved() const { return achieved_; }

 private:
  long required_;
  long achieved_;
};

class NumericalDivergence : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line, long column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  long line() const { return line_; }
  long column() const { return column_; }

 private:
  long line_;
  long column_;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path)
      : Error(what + ": " + path), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace glrr
