#pragma once

#include <stdexcept>
#include <string>

namespace lqi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Intersection of arms that do not refine one common simple type.
class IllFoundedType : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Unification mismatch, occurs-check failure or unbound variable during W.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class InferenceFailure : public Error {
 public:
  using Error::Error;
};

class ArmCapExceeded : public Error {
 public:
  ArmCapExceeded(const std::string& message, std::size_t cap) : Error(message), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace lqi
