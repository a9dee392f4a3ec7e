#pragma once

#include "crflat/jet.hpp"
#include "crflat/map_model.hpp"

#include <random>
#include <string>

namespace testing_support {

using namespace crflat;

inline Scalar small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  return Scalar(re, im);
}

inline Jet random_jet(std::mt19937& rng, int n, int order, Chart chart, int nterms = 8) {
  std::vector<Jet::Term> terms;
  std::uniform_int_distribution<int> e(0, order);
  for (int k = 0; k < nterms; ++k) {
    Monomial m;
    m.zExp.resize(n);
    m.zBarExp.resize(n);
    for (int i = 0; i < n; ++i) {
      m.zExp[i] = e(rng) % 3;
      if (chart == Chart::Heisenberg) m.zBarExp[i] = e(rng) % 3;
    }
    m.uExp = e(rng) % 2;
    if (m.weight() > order) continue;
    terms.push_back({make_key(m), small_rational(rng)});
  }
  return Jet::from_terms(n, order, chart, terms);
}

inline std::string fixture(const std::string& name) { return std::string(CRFLAT_FIXTURES) + "/" + name; }

inline mpq_class q(long a, long b = 1) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace testing_support

#include "crflat/automorphisms.hpp"

namespace testing_support {

inline BoundaryPoint random_point(std::mt19937& rng, int n, int range = 6) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 5);
  BoundaryPoint p;
  for (int j = 0; j < n; ++j) p.z0.push_back(Scalar(q(num(rng), den(rng) * 4), q(num(rng), den(rng) * 4)));
  p.u0 = Scalar(q(num(rng), den(rng) * 4));
  return p;
}

// Rational unitary matrix via the Cayley transform of a skew-Hermitian matrix; det forced to 1 when special.
inline Matrix random_unitary(std::mt19937& rng, int n, bool special) {
  Matrix X(n, n, Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = small_rational(rng);
  Matrix K = X - adjoint(X);
  Matrix I = identity_matrix(n);
  Matrix U = (I - K) * inverse(I + K);
  if (special) {
    Scalar d = determinant(U);
    for (int i = 0; i < n; ++i) U(i, n - 1) *= d.conj();
  }
  return U;
}

inline Automorphism random_su(std::mt19937& rng, int dim) {
  std::vector<Scalar> a;
  for (int k = 0; k < dim; ++k) a.push_back(small_rational(rng) * Scalar(q(1, 4)));
  Automorphism iso = make_isotropy(Scalar(1), small_rational(rng).real_part() * Scalar(q(1, 4)), a,
                                   random_unitary(rng, dim, true));
  Automorphism s = make_sigma0(random_point(rng, dim, 2));
  return compose(s, iso);
}

}  // namespace testing_support
