#pragma once

#include "crflat/jet.hpp"
#include "crflat/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace crflat {

// Polynomial in (z_1..z_n, w); exponent vectors have length n+1 with w last.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Scalar& c);
  static Polynomial variable(int nvars, int index);

  int nvars() const { return nvars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const;
  int total_degree() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Scalar& s);
  Polynomial operator-() const { return *this * Scalar(-1); }
  Polynomial pow(int e) const;
  bool operator==(const Polynomial& o) const;

  Scalar evaluate(const std::vector<Scalar>& x) const;
  cplx evaluate(const std::vector<cplx>& x) const;
  Jet evaluate(const JetVector& x) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Scalar& c);

  int nvars_ = 0;
  std::map<Exponents, Scalar> terms_;
};

class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(Polynomial num);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  int nvars() const { return num_.nvars(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  RationalFunction pow(int e) const;

  // Equality as rational functions (cross multiplication).
  bool equals(const RationalFunction& o) const;

  Scalar evaluate(const std::vector<Scalar>& x) const;
  cplx evaluate(const std::vector<cplx>& x) const;
  // Expands num * den^{-1} as a jet; the denominator needs a nonzero constant term.
  Jet evaluate(const JetVector& x) const;

  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

// Substitutes args (one per variable) into every component.
std::vector<RationalFunction> substitute(const std::vector<RationalFunction>& f,
                                         const std::vector<RationalFunction>& args);

}  // namespace crflat
