#pragma once

#include <stdexcept>
#include <string>

namespace crflat {

enum class ErrorKind {
  Structural,
  SingularSubstitution,
  Parse,
  Dimension,
  NonRational,
  InvalidModel,
  Pole,
  OffHypersurface,
  Singular,
  NonEmbedding,
  NormalizationFailure,
  DegenerateReeb,
  Chart,
  Inconsistency,
  Usage,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column, ErrorKind kind = ErrorKind::Parse)
      : Error(kind, what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace crflat
