#include "crflat/jet.hpp"

#include "crflat/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crflat {

namespace {

int slot_shift(int slot) { return 56 - 4 * slot; }

int slot_of(Var v, int arity) {
  switch (v.kind) {
    case VarKind::Z: return v.index;
    case VarKind::ZBar: return arity + v.index;
    case VarKind::U: return 2 * arity;
  }
  return 0;
}

int exponent_at(MonoKey k, int slot) { return static_cast<int>((k >> slot_shift(slot)) & 0xF); }

MonoKey unit_key(int slot, int weight) {
  return (MonoKey(weight) << 60) | (MonoKey(1) << slot_shift(slot));
}

void sort_and_merge(std::vector<Jet::Term>& v) {
  std::sort(v.begin(), v.end(), [](const Jet::Term& a, const Jet::Term& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    Scalar acc = std::move(v[i].second);
    while (j < v.size() && v[j].first == v[i].first) acc += v[j++].second;
    if (!acc.is_zero()) v[out++] = {v[i].first, std::move(acc)};
    i = j;
  }
  v.resize(out);
}

}  // namespace

int Monomial::weight() const {
  int w = 2 * uExp;
  for (int e : zExp) w += e;
  for (int e : zBarExp) w += e;
  return w;
}

MonoKey make_key(const Monomial& m) {
  int n = static_cast<int>(m.zExp.size());
  int w = m.weight();
  if (n > kMaxArity || w > kMaxOrder) throw Error(ErrorKind::Structural, "monomial exceeds packing limits");
  MonoKey k = MonoKey(w) << 60;
  for (int i = 0; i < n; ++i) {
    k |= MonoKey(m.zExp[i]) << slot_shift(i);
    int zb = i < static_cast<int>(m.zBarExp.size()) ? m.zBarExp[i] : 0;
    k |= MonoKey(zb) << slot_shift(n + i);
  }
  k |= MonoKey(m.uExp) << slot_shift(2 * n);
  return k;
}

Monomial key_monomial(MonoKey k, int arity) {
  Monomial m;
  m.zExp.resize(arity);
  m.zBarExp.resize(arity);
  for (int i = 0; i < arity; ++i) {
    m.zExp[i] = exponent_at(k, i);
    m.zBarExp[i] = exponent_at(k, arity + i);
  }
  m.uExp = exponent_at(k, 2 * arity);
  return m;
}

int var_weight(Var v) { return v.kind == VarKind::U ? 2 : 1; }

Jet Jet::zero(int arity, int order, Chart chart) {
  if (arity < 1 || arity > kMaxArity) throw Error(ErrorKind::Structural, "jet arity out of range");
  if (order < 0 || order > kMaxOrder) throw Error(ErrorKind::Structural, "jet truncation order out of range");
  return Jet(arity, order, chart);
}

Jet Jet::constant(int arity, int order, Chart chart, const Scalar& c) {
  Jet j = zero(arity, order, chart);
  if (!c.is_zero()) j.terms_.push_back({MonoKey(0), c});
  return j;
}

Jet Jet::variable(int arity, int order, Chart chart, Var v) {
  Jet j = zero(arity, order, chart);
  if (v.kind == VarKind::ZBar && chart == Chart::Holomorphic)
    throw Error(ErrorKind::Structural, "holomorphic jets have no zbar variable");
  if (v.index < 0 || v.index >= arity) throw Error(ErrorKind::Structural, "variable index out of range");
  int w = var_weight(v);
  if (w <= order) j.terms_.push_back({unit_key(slot_of(v, arity), w), Scalar(1)});
  return j;
}

Jet Jet::from_terms(int arity, int order, Chart chart, std::vector<Term> terms) {
  Jet j = zero(arity, order, chart);
  std::vector<Term> kept;
  for (auto& t : terms)
    if (key_weight(t.first) <= order) kept.push_back(std::move(t));
  sort_and_merge(kept);
  j.terms_ = std::move(kept);
  return j;
}

bool Jet::is_exact() const {
  for (const auto& t : terms_)
    if (!t.second.is_exact()) return false;
  return true;
}

Scalar Jet::coefficient(const Monomial& m) const {
  if (m.weight() > order_) throw Error(ErrorKind::Structural, "coefficient requested above truncation order");
  MonoKey k = make_key(m);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, MonoKey x) { return t.first < x; });
  if (it != terms_.end() && it->first == k) return it->second;
  return Scalar(0);
}

Scalar Jet::constant_term() const {
  if (!terms_.empty() && terms_.front().first == 0) return terms_.front().second;
  return Scalar(0);
}

int Jet::weighted_order() const { return terms_.empty() ? kInfiniteOrder : key_weight(terms_.front().first); }

void Jet::check_compatible(const Jet& o) const {
  if (arity_ != o.arity_) throw Error(ErrorKind::Structural, "jet arity mismatch");
  if (chart_ != o.chart_) throw Error(ErrorKind::Structural, "jet chart mismatch");
}

void Jet::normalize() {
  std::vector<Term> kept;
  kept.reserve(terms_.size());
  for (auto& t : terms_)
    if (key_weight(t.first) <= order_ && !t.second.is_zero()) kept.push_back(std::move(t));
  terms_ = std::move(kept);
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  int m = std::min(order_, o.order_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      if (key_weight(a->first) <= m) out.push_back(std::move(*a));
      ++a;
    } else if (a == terms_.end() || b->first < a->first) {
      if (key_weight(b->first) <= m) out.push_back(*b);
      ++b;
    } else {
      Scalar s = a->second + b->second;
      if (key_weight(a->first) <= m && !s.is_zero()) out.push_back({a->first, std::move(s)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  order_ = m;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet& Jet::operator+=(const Scalar& s) {
  return *this += Jet::constant(arity_, order_, chart_, s);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  int m = std::min(a.order_, b.order_);
  Jet r(a.arity_, m, a.chart_);
  std::vector<Jet::Term> acc;
  acc.reserve(a.terms_.size() * 4);
  for (const auto& ta : a.terms_) {
    int wa = key_weight(ta.first);
    if (wa > m) break;
    for (const auto& tb : b.terms_) {
      if (wa + key_weight(tb.first) > m) break;
      acc.push_back({ta.first + tb.first, ta.second * tb.second});
    }
  }
  sort_and_merge(acc);
  r.terms_ = std::move(acc);
  return r;
}

Jet operator*(const Jet& a, const Scalar& s) {
  Jet r = a;
  if (s.is_zero()) {
    r.terms_.clear();
    return r;
  }
  for (auto& t : r.terms_) t.second *= s;
  r.normalize();
  return r;
}

bool Jet::operator==(const Jet& o) const {
  if (arity_ != o.arity_ || chart_ != o.chart_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
  return true;
}

Jet Jet::conj() const {
  if (chart_ != Chart::Heisenberg) throw Error(ErrorKind::Structural, "conjugation needs a Heisenberg jet");
  Jet r(arity_, order_, chart_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = key_monomial(t.first, arity_);
    std::swap(m.zExp, m.zBarExp);
    r.terms_.push_back({make_key(m), t.second.conj()});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  return r;
}

Jet Jet::differentiate(Var v) const {
  if (v.kind == VarKind::ZBar && chart_ == Chart::Holomorphic) return Jet(arity_, order_ - 1 < 0 ? 0 : order_ - 1, chart_);
  int w = var_weight(v);
  if (order_ < w) throw Error(ErrorKind::Structural, "differentiation below truncation order");
  int slot = slot_of(v, arity_);
  MonoKey unit = unit_key(slot, w);
  Jet r(arity_, order_ - w, chart_);
  for (const auto& t : terms_) {
    int e = exponent_at(t.first, slot);
    if (e == 0) continue;
    r.terms_.push_back({t.first - unit, t.second * Scalar(e)});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  return r;
}

Jet Jet::truncate(int order) const {
  Jet r = *this;
  r.order_ = std::min(order, order_);
  r.normalize();
  return r;
}

Jet Jet::homogeneous_part(int weight) const {
  Jet r(arity_, order_, chart_);
  for (const auto& t : terms_)
    if (key_weight(t.first) == weight) r.terms_.push_back(t);
  return r;
}

Jet Jet::inverse() const {
  Scalar c = constant_term();
  if (c.is_zero()) throw Error(ErrorKind::SingularSubstitution, "inverse of a jet with zero constant term");
  Scalar ci = Scalar(1) / c;
  Jet x = (*this * ci);
  x += Scalar(-1);  // x = a/c - 1, weighted order >= 1
  Jet negx = -x;
  Jet sum = Jet::constant(arity_, order_, chart_, Scalar(1));
  Jet term = sum;
  for (int k = 1; k <= order_; ++k) {
    term = term * negx;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * ci;
}

Jet Jet::sqrt() const {
  Scalar c = constant_term();
  Scalar sc = sqrt_nonneg(c);
  if (sc.is_zero()) throw Error(ErrorKind::SingularSubstitution, "square root of a jet with zero constant term");
  Jet x = (*this * (Scalar(1) / c));
  x += Scalar(-1);
  Jet sum = Jet::constant(arity_, order_, chart_, Scalar(1));
  Jet term = sum;
  Scalar binom(1);
  for (int k = 1; k <= order_; ++k) {
    // binom(1/2, k) = binom(1/2, k-1) * (1/2 - (k-1)) / k
    binom = binom * (Scalar::rational(1, 2) - Scalar(k - 1)) / Scalar(k);
    term = term * x;
    if (term.is_zero()) break;
    sum += term * binom;
  }
  return sum * sc;
}

Jet Jet::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Jet r = Jet::constant(arity_, order_, chart_, Scalar(1));
  Jet b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Jet Jet::to_float() const {
  Jet r = *this;
  for (auto& t : r.terms_) t.second = t.second.to_float();
  return r;
}

double Jet::max_abs() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.second.abs());
  return m;
}

cplx Jet::evaluate(const std::vector<cplx>& z, const std::vector<cplx>& zbar, cplx u) const {
  cplx s = 0.0;
  for (const auto& t : terms_) {
    Monomial m = key_monomial(t.first, arity_);
    cplx v = t.second.to_complex();
    for (int i = 0; i < arity_; ++i) {
      for (int e = 0; e < m.zExp[i]; ++e) v *= z[i];
      if (chart_ == Chart::Heisenberg)
        for (int e = 0; e < m.zBarExp[i]; ++e) v *= zbar[i];
    }
    for (int e = 0; e < m.uExp; ++e) v *= u;
    s += v;
  }
  return s;
}

std::string Jet::to_string() const {
  if (terms_.empty()) return "0 + o_wt(" + std::to_string(order_) + ")";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.second.to_string();
    Monomial m = key_monomial(t.first, arity_);
    for (int i = 0; i < arity_; ++i) {
      if (m.zExp[i]) os << "*z" << i + 1 << (m.zExp[i] > 1 ? "^" + std::to_string(m.zExp[i]) : "");
      if (m.zBarExp[i]) os << "*zb" << i + 1 << (m.zBarExp[i] > 1 ? "^" + std::to_string(m.zBarExp[i]) : "");
    }
    const char* last = chart_ == Chart::Holomorphic ? "w" : "u";
    if (m.uExp) os << "*" << last << (m.uExp > 1 ? "^" + std::to_string(m.uExp) : "");
  }
  os << " + o_wt(" << order_ << ")";
  return os.str();
}

Jet compose(const Jet& f, const JetVector& args) {
  if (f.chart() != Chart::Holomorphic) throw Error(ErrorKind::Structural, "compose expects a holomorphic outer jet");
  int n = f.arity();
  if (static_cast<int>(args.size()) != n + 1) throw Error(ErrorKind::Dimension, "compose: wrong number of arguments");
  int order = f.order();
  for (int i = 0; i <= n; ++i) {
    int need = i < n ? 1 : 2;
    if (args[i].weighted_order() < need)
      throw Error(ErrorKind::Structural, "compose: argument weighted order too low for truncated composition");
    order = std::min(order, args[i].order());
    if (args[i].arity() != args[0].arity() || args[i].chart() != args[0].chart())
      throw Error(ErrorKind::Structural, "compose: argument arity mismatch");
  }
  const Jet& proto = args[0];
  // Power caches per variable.
  std::vector<std::vector<Jet>> pw(n + 1);
  for (int i = 0; i <= n; ++i) {
    pw[i].push_back(Jet::constant(proto.arity(), order, proto.chart(), Scalar(1)));
  }
  Jet result = Jet::zero(proto.arity(), order, proto.chart());
  for (const auto& t : f.terms()) {
    if (key_weight(t.first) > order) break;
    Monomial m = key_monomial(t.first, n);
    Jet term = Jet::constant(proto.arity(), order, proto.chart(), t.second);
    for (int i = 0; i <= n; ++i) {
      int e = i < n ? m.zExp[i] : m.uExp;
      if (e == 0) continue;
      while (static_cast<int>(pw[i].size()) <= e) pw[i].push_back((pw[i].back() * args[i]).truncate(order));
      term = term * pw[i][e];
    }
    result += term;
  }
  return result;
}

JetVector compose(const JetVector& f, const JetVector& args) {
  JetVector r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(compose(c, args));
  return r;
}

JetVector identity_jets(int arity, int order, Chart chart) {
  JetVector v;
  for (int i = 0; i < arity; ++i) v.push_back(Jet::variable(arity, order, chart, {VarKind::Z, i}));
  v.push_back(Jet::variable(arity, order, chart, {VarKind::U, 0}));
  return v;
}

JetVector restrict_to_heisenberg(const JetVector& f) {
  if (f.empty()) return {};
  int n = f[0].arity();
  int order = f[0].order();
  for (const auto& c : f) order = std::min(order, c.order());
  JetVector args;
  Jet w = Jet::variable(n, order, Chart::Heisenberg, {VarKind::U, 0});
  for (int i = 0; i < n; ++i) {
    Jet z = Jet::variable(n, order, Chart::Heisenberg, {VarKind::Z, i});
    Jet zb = Jet::variable(n, order, Chart::Heisenberg, {VarKind::ZBar, i});
    args.push_back(z);
    w += (z * zb) * Scalar::imag_unit();
  }
  args.push_back(w);
  return compose(f, args);
}

Jet apply_L(const Jet& h, int alpha) {
  if (h.chart() != Chart::Heisenberg) throw Error(ErrorKind::Structural, "apply_L expects a Heisenberg jet");
  Jet dz = h.differentiate({VarKind::Z, alpha});
  Jet du = h.differentiate({VarKind::U, 0});
  // zbar * du is accurate to order(du) + 1.
  Jet zb = Jet::variable(h.arity(), dz.order(), Chart::Heisenberg, {VarKind::ZBar, alpha});
  Jet duw = Jet::from_terms(h.arity(), dz.order(), Chart::Heisenberg, du.terms());
  return dz + (zb * duw) * Scalar::imag_unit();
}

Jet apply_T(const Jet& h) { return h.differentiate({VarKind::U, 0}); }

double max_abs(const JetVector& v) {
  double m = 0.0;
  for (const auto& j : v) m = std::max(m, j.max_abs());
  return m;
}

}  // namespace crflat
