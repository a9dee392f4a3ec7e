#include "crflat/scalar.hpp"

#include "crflat/error.hpp"

#include <cmath>
#include <sstream>

namespace crflat {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::SingularSubstitution: return "singular-substitution";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::NonRational: return "non-rational";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::OffHypersurface: return "off-hypersurface";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::NonEmbedding: return "non-embedding";
    case ErrorKind::NormalizationFailure: return "normalization-failure";
    case ErrorKind::DegenerateReeb: return "degenerate-reeb";
    case ErrorKind::Chart: return "chart";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

Scalar Scalar::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q, mpq_class(0));
}

cplx Scalar::to_complex() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return cplx(g->re.get_d(), g->im.get_d());
  return std::get<cplx>(v_);
}

bool Scalar::is_zero() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return sgn(g->re) == 0 && sgn(g->im) == 0;
  return std::get<cplx>(v_) == cplx(0.0, 0.0);
}

bool Scalar::is_real() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return sgn(g->im) == 0;
  return std::get<cplx>(v_).imag() == 0.0;
}

Scalar Scalar::conj() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return Scalar(g->re, -g->im);
  return Scalar(std::conj(std::get<cplx>(v_)));
}

Scalar Scalar::real_part() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return Scalar(g->re, mpq_class(0));
  return Scalar(cplx(std::get<cplx>(v_).real(), 0.0));
}

Scalar Scalar::imag_part() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return Scalar(g->im, mpq_class(0));
  return Scalar(cplx(std::get<cplx>(v_).imag(), 0.0));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& a = std::get<GaussRational>(v_);
    const auto& b = o.exact();
    a.re += b.re;
    a.im += b.im;
  } else {
    v_ = to_complex() + o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& a = std::get<GaussRational>(v_);
    const auto& b = o.exact();
    a.re -= b.re;
    a.im -= b.im;
  } else {
    v_ = to_complex() - o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& a = std::get<GaussRational>(v_);
    const auto& b = o.exact();
    if (sgn(a.im) == 0 && sgn(b.im) == 0) {
      a.re *= b.re;
    } else {
      mpq_class re = a.re * b.re - a.im * b.im;
      mpq_class im = a.re * b.im + a.im * b.re;
      a.re = std::move(re);
      a.im = std::move(im);
    }
  } else {
    v_ = to_complex() * o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorKind::Singular, "division by zero scalar");
  if (is_exact() && o.is_exact()) {
    auto& a = std::get<GaussRational>(v_);
    const auto& b = o.exact();
    mpq_class d = b.re * b.re + b.im * b.im;
    mpq_class re = (a.re * b.re + a.im * b.im) / d;
    mpq_class im = (a.im * b.re - a.re * b.im) / d;
    a.re = std::move(re);
    a.im = std::move(im);
  } else {
    v_ = to_complex() / o.to_complex();
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (auto g = std::get_if<GaussRational>(&v_)) return Scalar(-g->re, -g->im);
  return Scalar(-std::get<cplx>(v_));
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return exact() == o.exact();
  return to_complex() == o.to_complex();
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (auto g = std::get_if<GaussRational>(&v_)) {
    if (sgn(g->im) == 0) return g->re.get_str();
    if (sgn(g->re) == 0) return g->im.get_str() + "*i";
    os << g->re.get_str() << (sgn(g->im) > 0 ? "+" : "") << g->im.get_str() << "*i";
    return os.str();
  }
  os.precision(17);
  cplx z = std::get<cplx>(v_);
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "*i)";
  return os.str();
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

Scalar sqrt_nonneg(const Scalar& x) {
  if (x.is_exact()) {
    const auto& g = x.exact();
    if (sgn(g.im) != 0 || sgn(g.re) < 0)
      throw Error(ErrorKind::NonEmbedding, "square root of a value that is not nonnegative real: " + x.to_string());
    mpz_class num = g.re.get_num(), den = g.re.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      return Scalar(mpq_class(rn, rd), mpq_class(0));
    }
    return Scalar(std::sqrt(g.re.get_d()));
  }
  cplx z = x.to_complex();
  return Scalar(std::sqrt(std::max(z.real(), 0.0)));
}

Scalar pow(const Scalar& x, int e) {
  if (e < 0) return Scalar(1) / pow(x, -e);
  Scalar r(1), b = x;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

}  // namespace crflat
