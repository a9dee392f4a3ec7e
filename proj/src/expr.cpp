#include "crflat/expr.hpp"

#include "crflat/error.hpp"

#include <cctype>

namespace crflat {

namespace {

class Parser {
 public:
  Parser(const std::string& s, int n, int line, int offset) : s_(s), n_(n), line_(line), offset_(offset) {}

  std::unique_ptr<ExprNode> parse() {
    auto e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::Parse) const {
    throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1, kind);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::unique_ptr<ExprNode> make(ExprNode::Kind k) {
    auto node = std::make_unique<ExprNode>();
    node->kind = k;
    node->column = offset_ + static_cast<int>(pos_) + 1;
    return node;
  }

  std::unique_ptr<ExprNode> binary(ExprNode::Kind k, std::unique_ptr<ExprNode> a, std::unique_ptr<ExprNode> b) {
    auto node = make(k);
    node->children.push_back(std::move(a));
    node->children.push_back(std::move(b));
    return node;
  }

  std::unique_ptr<ExprNode> expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = binary(ExprNode::Kind::Add, std::move(lhs), term());
      else if (accept('-'))
        lhs = binary(ExprNode::Kind::Sub, std::move(lhs), term());
      else
        return lhs;
    }
  }

  std::unique_ptr<ExprNode> term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = binary(ExprNode::Kind::Mul, std::move(lhs), unary());
      else if (accept('/'))
        lhs = binary(ExprNode::Kind::Div, std::move(lhs), unary());
      else
        return lhs;
    }
  }

  std::unique_ptr<ExprNode> unary() {
    if (accept('-')) {
      auto node = make(ExprNode::Kind::Neg);
      node->children.push_back(unary());
      return node;
    }
    if (accept('+')) return unary();
    return power();
  }

  std::unique_ptr<ExprNode> power() {
    auto base = primary();
    if (!accept('^')) return base;
    auto node = make(ExprNode::Kind::Pow);
    node->exponent = integer_exponent();
    node->children.push_back(std::move(base));
    return node;
  }

  int integer_exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail(pos_ >= s_.size() ? "expected integer exponent at end of input" : "expected integer exponent");
    if (pos_ < s_.size() && s_[pos_] == '.') fail("exponent must be an integer", ErrorKind::NonRational);
    int e = std::stoi(s_.substr(start, pos_ - start));
    if (paren && !accept(')')) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '/' || s_[pos_] == '.')) fail("exponent must be an integer", ErrorKind::NonRational);
      fail("expected ')' after exponent");
    }
    return neg ? -e : e;
  }

  std::unique_ptr<ExprNode> primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')')) fail(pos_ >= s_.size() ? "expected ')' at end of input" : "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::unique_ptr<ExprNode> number() {
    auto node = make(ExprNode::Kind::Number);
    std::size_t start = pos_;
    std::string digits;
    int frac = 0;
    bool dot = false;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      if (s_[pos_] == '.') {
        if (dot) fail("malformed number");
        dot = true;
      } else {
        digits += s_[pos_];
        if (dot) ++frac;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E'))
      fail("floating-point exponent notation is not a rational literal", ErrorKind::NonRational);
    mpz_class num(digits), den(1);
    for (int k = 0; k < frac; ++k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    node->value = GaussRational{q, 0};
    return node;
  }

  std::unique_ptr<ExprNode> identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    auto node = make(ExprNode::Kind::Variable);
    node->column = offset_ + static_cast<int>(start) + 1;
    if (id == "i") {
      node->kind = ExprNode::Kind::Number;
      node->value = GaussRational{0, 1};
      return node;
    }
    if (id == "w") {
      node->variable = n_;
      return node;
    }
    if (id.size() > 1 && id[0] == 'z' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
      int k = std::stoi(id.substr(1));
      if (k < 1 || k > n_) {
        pos_ = start;
        fail("variable " + id + " is outside z1..z" + std::to_string(n_), ErrorKind::Dimension);
      }
      node->variable = k - 1;
      return node;
    }
    pos_ = start;
    static const char* transcendental[] = {"sqrt", "exp", "log", "sin", "cos", "tan", "pi", "e"};
    for (const char* t : transcendental)
      if (id == t) fail("'" + id + "' is not a rational expression", ErrorKind::NonRational);
    fail("unknown identifier '" + id + "'");
  }

  const std::string& s_;
  int n_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

RationalFunction eval(const ExprNode& e, int nv) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Number: return RationalFunction(Polynomial::constant(nv, Scalar(e.value)));
    case K::Variable: return RationalFunction(Polynomial::variable(nv, e.variable));
    case K::Add: return eval(*e.children[0], nv) + eval(*e.children[1], nv);
    case K::Sub: return eval(*e.children[0], nv) - eval(*e.children[1], nv);
    case K::Mul: return eval(*e.children[0], nv) * eval(*e.children[1], nv);
    case K::Div: {
      RationalFunction d = eval(*e.children[1], nv);
      if (d.num().is_zero()) throw ParseError("division by zero", 1, e.column, ErrorKind::InvalidModel);
      return eval(*e.children[0], nv) / d;
    }
    case K::Neg: return -eval(*e.children[0], nv);
    case K::Pow: return eval(*e.children[0], nv).pow(e.exponent);
  }
  return RationalFunction();
}

}  // namespace

RationalFunction ExprTree::to_rational() const { return eval(*root_, n_ + 1); }

ExprTree parse_expression(const std::string& text, int n, int line, int column_offset) {
  Parser p(text, n, line, column_offset);
  return ExprTree(p.parse(), n);
}

}  // namespace crflat
