#pragma once

#include "crflat/scalar.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace crflat {

// Holomorphic jets live in (z_1..z_n, w) and use the u slot for w.
// Heisenberg jets live in (z, zbar, u).
enum class Chart { Holomorphic, Heisenberg };

enum class VarKind { Z, ZBar, U };

struct Var {
  VarKind kind;
  int index = 0;  // 0-based, ignored for U
};

constexpr int kMaxArity = 7;
constexpr int kMaxOrder = 15;
constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

struct Monomial {
  std::vector<int> zExp;
  std::vector<int> zBarExp;
  int uExp = 0;

  int weight() const;
};

using MonoKey = std::uint64_t;

MonoKey make_key(const Monomial& m);
Monomial key_monomial(MonoKey k, int arity);
inline int key_weight(MonoKey k) { return static_cast<int>(k >> 60); }

class Jet {
 public:
  using Term = std::pair<MonoKey, Scalar>;

  Jet() = default;
  static Jet zero(int arity, int order, Chart chart);
  static Jet constant(int arity, int order, Chart chart, const Scalar& c);
  static Jet variable(int arity, int order, Chart chart, Var v);
  static Jet from_terms(int arity, int order, Chart chart, std::vector<Term> terms);

  int arity() const { return arity_; }
  int order() const { return order_; }
  Chart chart() const { return chart_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const;

  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const;
  int weighted_order() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Scalar& s);
  friend Jet operator*(const Scalar& s, const Jet& a) { return a * s; }
  Jet operator-() const;
  Jet& operator+=(const Scalar& s);

  bool operator==(const Jet& o) const;
  bool operator!=(const Jet& o) const { return !(*this == o); }

  Jet conj() const;
  Jet differentiate(Var v) const;
  Jet truncate(int order) const;
  Jet homogeneous_part(int weight) const;
  Jet inverse() const;
  Jet sqrt() const;
  Jet pow(int e) const;
  Jet to_float() const;

  double max_abs() const;
  cplx evaluate(const std::vector<cplx>& z, const std::vector<cplx>& zbar, cplx u) const;

  std::string to_string() const;

 private:
  Jet(int arity, int order, Chart chart) : arity_(arity), order_(order), chart_(chart) {}
  void check_compatible(const Jet& o) const;
  void normalize();

  int arity_ = 0;
  int order_ = 0;
  Chart chart_ = Chart::Holomorphic;
  std::vector<Term> terms_;
};

using JetVector = std::vector<Jet>;

int var_weight(Var v);

// Substitutes args for the variables (z_1..z_n, w) of a holomorphic jet.
Jet compose(const Jet& f, const JetVector& args);
JetVector compose(const JetVector& f, const JetVector& args);

// w -> u + i sum z_j zbar_j.
JetVector restrict_to_heisenberg(const JetVector& f);

// The chart vector fields d/dz_a + i zbar_a d/du and d/du.
Jet apply_L(const Jet& h, int alpha);
Jet apply_T(const Jet& h);

JetVector identity_jets(int arity, int order, Chart chart);
double max_abs(const JetVector& v);

}  // namespace crflat
