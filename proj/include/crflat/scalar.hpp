#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>
#include <variant>

namespace crflat {

using cplx = std::complex<double>;

struct GaussRational {
  mpq_class re;
  mpq_class im;

  bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
};

// A complex number that is either an exact Gaussian rational or a double pair.
// Any operation touching a float operand produces a float.
class Scalar {
 public:
  Scalar() : v_(GaussRational{0, 0}) {}
  Scalar(int x) : v_(GaussRational{x, 0}) {}
  Scalar(long x) : v_(GaussRational{x, 0}) {}
  Scalar(const mpq_class& re, const mpq_class& im = 0) : v_(GaussRational{re, im}) {}
  Scalar(const GaussRational& g) : v_(g) {}
  Scalar(cplx z) : v_(z) {}
  Scalar(double x) : v_(cplx(x, 0.0)) {}

  static Scalar rational(long num, long den = 1);
  static Scalar imag_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  bool is_exact() const { return std::holds_alternative<GaussRational>(v_); }
  const GaussRational& exact() const { return std::get<GaussRational>(v_); }
  cplx to_complex() const;
  Scalar to_float() const { return Scalar(to_complex()); }

  bool is_zero() const;
  bool is_real() const;
  double abs() const { return std::abs(to_complex()); }
  double norm() const { return std::norm(to_complex()); }

  Scalar conj() const;
  Scalar real_part() const;
  Scalar imag_part() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  // Exact equality; a float never equals an exact value unless both convert identically.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::variant<GaussRational, cplx> v_;
};

bool approx_equal(const Scalar& a, const Scalar& b, double tol);

// Square root of a nonnegative real scalar; exact when the value is a rational square.
Scalar sqrt_nonneg(const Scalar& x);

Scalar pow(const Scalar& x, int e);

}  // namespace crflat
