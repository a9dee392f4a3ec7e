#include "crflat/polynomial.hpp"

#include "crflat/error.hpp"

#include <algorithm>
#include <sstream>

namespace crflat {

Polynomial Polynomial::constant(int nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

void Polynomial::add_term(const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Polynomial::is_exact() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_exact()) return false;
  return true;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorKind::Dimension, "polynomial variable count mismatch");
  Polynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial operator*(const Polynomial& a, const Scalar& s) {
  Polynomial r(a.nvars_);
  for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::Structural, "negative polynomial power");
  Polynomial r = constant(nvars_, Scalar(1));
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (a->first != b->first || a->second != b->second) return false;
  return true;
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& x) const {
  Scalar s(0);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t *= crflat::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

cplx Polynomial::evaluate(const std::vector<cplx>& x) const {
  cplx s = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx t = c.to_complex();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Jet Polynomial::evaluate(const JetVector& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw Error(ErrorKind::Dimension, "polynomial evaluation arity");
  const Jet& proto = x[0];
  int order = proto.order();
  for (const auto& j : x) order = std::min(order, j.order());
  std::vector<std::vector<Jet>> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) pw[i].push_back(Jet::constant(proto.arity(), order, proto.chart(), Scalar(1)));
  Jet s = Jet::zero(proto.arity(), order, proto.chart());
  for (const auto& [e, c] : terms_) {
    Jet t = Jet::constant(proto.arity(), order, proto.chart(), c);
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      while (static_cast<int>(pw[i].size()) <= e[i]) pw[i].push_back(pw[i].back() * x[i]);
      t = t * pw[i][e[i]];
    }
    s += t;
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      os << "*" << (i + 1 == nvars_ ? std::string("w") : "z" + std::to_string(i + 1));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidModel, "rational function with identically zero denominator");
  if (num_.nvars() == 0) num_ = Polynomial(den_.nvars());
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(num), den_(Polynomial::constant(num.nvars(), Scalar(1))) {}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw Error(ErrorKind::InvalidModel, "division by an identically zero expression");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e >= 0) return RationalFunction(num_.pow(e), den_.pow(e));
  if (num_.is_zero()) throw Error(ErrorKind::InvalidModel, "negative power of zero");
  return RationalFunction(den_.pow(-e), num_.pow(-e));
}

bool RationalFunction::equals(const RationalFunction& o) const { return num_ * o.den_ == o.num_ * den_; }

Scalar RationalFunction::evaluate(const std::vector<Scalar>& x) const {
  Scalar d = den_.evaluate(x);
  if (d.is_zero()) throw Error(ErrorKind::Pole, "pole: denominator vanishes at the evaluation point");
  return num_.evaluate(x) / d;
}

cplx RationalFunction::evaluate(const std::vector<cplx>& x) const {
  cplx d = den_.evaluate(x);
  if (d == cplx(0.0, 0.0)) throw Error(ErrorKind::Pole, "pole: denominator vanishes at the evaluation point");
  return num_.evaluate(x) / d;
}

Jet RationalFunction::evaluate(const JetVector& x) const {
  Jet d = den_.evaluate(x);
  if (d.constant_term().is_zero())
    throw Error(ErrorKind::SingularSubstitution, "denominator jet has zero constant term");
  return num_.evaluate(x) * d.inverse();
}

std::string RationalFunction::to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

namespace {

Polynomial homogenized_eval(const Polynomial& p, const std::vector<Polynomial>& P, const std::vector<Polynomial>& Q,
                            const std::vector<int>& E, bool shared, int totalE, int outVars,
                            std::vector<std::vector<Polynomial>>& pp, std::vector<std::vector<Polynomial>>& qp) {
  auto power = [&](std::vector<std::vector<Polynomial>>& cache, const std::vector<Polynomial>& base, int i,
                   int e) -> const Polynomial& {
    while (static_cast<int>(cache[i].size()) <= e) cache[i].push_back(cache[i].back() * base[i]);
    return cache[i][e];
  };
  Polynomial r(outVars);
  for (const auto& [e, c] : p.terms()) {
    Polynomial t = Polynomial::constant(outVars, c);
    int deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t = t * power(pp, P, i, e[i]);
      deg += e[i];
      if (!shared && E[i] - e[i] > 0) t = t * power(qp, Q, i, E[i] - e[i]);
    }
    if (shared && totalE - deg > 0) t = t * power(qp, Q, 0, totalE - deg);
    r += t;
  }
  return r;
}

}  // namespace

std::vector<RationalFunction> substitute(const std::vector<RationalFunction>& f,
                                         const std::vector<RationalFunction>& args) {
  if (args.empty()) throw Error(ErrorKind::Dimension, "substitution with no arguments");
  int outVars = args[0].nvars();
  std::vector<Polynomial> P, Q;
  for (const auto& a : args) {
    P.push_back(a.num());
    Q.push_back(a.den());
  }
  bool shared = true;
  for (std::size_t i = 1; i < Q.size(); ++i)
    if (!(Q[i] == Q[0])) shared = false;
  std::vector<std::vector<Polynomial>> pp(args.size()), qp(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    pp[i].push_back(Polynomial::constant(outVars, Scalar(1)));
    qp[i].push_back(Polynomial::constant(outVars, Scalar(1)));
  }
  std::vector<RationalFunction> out;
  for (const auto& c : f) {
    if (c.nvars() != static_cast<int>(args.size())) throw Error(ErrorKind::Dimension, "substitution arity mismatch");
    std::vector<int> E(args.size(), 0);
    int totalE = std::max(c.num().total_degree(), c.den().total_degree());
    for (const auto* poly : {&c.num(), &c.den()})
      for (const auto& [e, coef] : poly->terms())
        for (std::size_t i = 0; i < e.size(); ++i) E[i] = std::max(E[i], e[i]);
    Polynomial n = homogenized_eval(c.num(), P, Q, E, shared, totalE, outVars, pp, qp);
    Polynomial d = homogenized_eval(c.den(), P, Q, E, shared, totalE, outVars, pp, qp);
    if (d.is_zero()) throw Error(ErrorKind::InvalidModel, "composition produces an identically zero denominator");
    out.emplace_back(std::move(n), std::move(d));
  }
  return out;
}

}  // namespace crflat
