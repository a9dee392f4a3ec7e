#pragma once

#include "crflat/polynomial.hpp"

#include <memory>
#include <string>
#include <vector>

namespace crflat {

struct ExprNode {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  GaussRational value;  // Number
  int variable = 0;     // Variable: 0..n-1 for z, n for w
  int exponent = 0;     // Pow
  std::vector<std::unique_ptr<ExprNode>> children;
  int column = 0;
};

class ExprTree {
 public:
  ExprTree(std::unique_ptr<ExprNode> root, int n) : root_(std::move(root)), n_(n) {}
  const ExprNode& root() const { return *root_; }
  int arity() const { return n_; }
  RationalFunction to_rational() const;

 private:
  std::unique_ptr<ExprNode> root_;
  int n_;
};

// Columns in errors are 1-based offsets into text, shifted by column_offset; line is passed through.
ExprTree parse_expression(const std::string& text, int n, int line = 1, int column_offset = 0);

}  // namespace crflat
