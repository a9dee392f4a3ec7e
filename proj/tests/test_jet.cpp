#include "support.hpp"

#include "crflat/error.hpp"
#include "crflat/expr.hpp"

#include <doctest.h>

using namespace crflat;
using namespace testing_support;

namespace {

Jet zv(int n, int m, int i) { return Jet::variable(n, m, Chart::Heisenberg, {VarKind::Z, i}); }
Jet zbv(int n, int m, int i) { return Jet::variable(n, m, Chart::Heisenberg, {VarKind::ZBar, i}); }
Jet uv(int n, int m) { return Jet::variable(n, m, Chart::Heisenberg, {VarKind::U, 0}); }

}  // namespace

TEST_CASE("jet arithmetic examples") {
  Jet p = zv(1, 4, 0) * zbv(1, 4, 0);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.weighted_order() == 2);
  CHECK(p.coefficient({{1}, {1}, 0}) == Scalar(1));

  Jet iz = zv(1, 4, 0) * Scalar::imag_unit();
  CHECK(iz.conj() == zbv(1, 4, 0) * Scalar(mpq_class(0), mpq_class(-1)));

  Jet u3 = uv(1, 3);
  CHECK((u3 * u3).is_zero());
}

TEST_CASE("weighted order") {
  Jet a = zv(2, 4, 0) * zv(2, 4, 0) * zbv(2, 4, 1);
  CHECK(a.weighted_order() == 3);
  CHECK(Jet::zero(2, 4, Chart::Heisenberg).weighted_order() == kInfiniteOrder);
  CHECK((uv(1, 4) + zv(1, 4, 0).pow(3)).weighted_order() == 2);
}

TEST_CASE("differentiate") {
  Jet u = uv(1, 4);
  CHECK((u * u).differentiate({VarKind::U, 0}) == uv(1, 2) * Scalar(2));
  CHECK((zv(1, 4, 0) * zbv(1, 4, 0)).differentiate({VarKind::Z, 0}) == zbv(1, 3, 0));
  CHECK((zv(2, 4, 0) * zv(2, 4, 0)).differentiate({VarKind::ZBar, 1}).is_zero());
  CHECK((u * u).differentiate({VarKind::U, 0}).order() == 2);
}

TEST_CASE("substitute geometric series") {
  auto rf = parse_expression("1/(1-w)", 1).to_rational();
  Jet w = uv(1, 2) + zv(1, 2, 0) * zbv(1, 2, 0) * Scalar::imag_unit();
  Jet r = rf.evaluate(JetVector{zv(1, 2, 0), w});
  Jet expected = Jet::constant(1, 2, Chart::Heisenberg, Scalar(1)) + uv(1, 2) +
                 zv(1, 2, 0) * zbv(1, 2, 0) * Scalar::imag_unit();
  CHECK(r == expected);

  auto id = parse_expression("z1", 1).to_rational();
  Jet j = zv(1, 4, 0) + uv(1, 4) * Scalar(3);
  CHECK(id.evaluate(JetVector{j, uv(1, 4)}) == j);

  auto shift = parse_expression("z1 + 0", 1).to_rational();
  CHECK(shift.evaluate(JetVector{zv(1, 4, 0), uv(1, 4)}) == zv(1, 4, 0));

  auto bad = parse_expression("1/w", 1).to_rational();
  CHECK_THROWS_AS(bad.evaluate(JetVector{zv(1, 4, 0), uv(1, 4)}), Error);
}

TEST_CASE("restrict to heisenberg") {
  JetVector w{Jet::variable(1, 4, Chart::Holomorphic, {VarKind::U, 0})};
  // Restriction needs n+1 components only for the substitution, a single component works too.
  Jet rw = restrict_to_heisenberg(w)[0];
  CHECK(rw == uv(1, 4) + zv(1, 4, 0) * zbv(1, 4, 0) * Scalar::imag_unit());

  JetVector z{Jet::variable(1, 4, Chart::Holomorphic, {VarKind::Z, 0})};
  CHECK(restrict_to_heisenberg(z)[0] == zv(1, 4, 0));

  JetVector w2{w[0] * w[0]};
  Jet zz = zv(1, 4, 0) * zbv(1, 4, 0);
  Jet expected = uv(1, 4) * uv(1, 4) + uv(1, 4) * zz * Scalar(mpq_class(0), mpq_class(2)) - zz * zz;
  CHECK(restrict_to_heisenberg(w2)[0] == expected);
}

TEST_CASE("ring axioms and truncation coherence on random exact jets") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 3;
    int m = 3 + trial % 3;
    Jet a = random_jet(rng, n, m, Chart::Heisenberg);
    Jet b = random_jet(rng, n, m, Chart::Heisenberg);
    Jet c = random_jet(rng, n, m, Chart::Heisenberg);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    Jet big_a = random_jet(rng, n, m + 2, Chart::Heisenberg);
    Jet big_b = random_jet(rng, n, m + 2, Chart::Heisenberg);
    CHECK((big_a * big_b).truncate(m) == big_a.truncate(m) * big_b.truncate(m));
    CHECK(a.conj().conj() == a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(a.differentiate({VarKind::Z, i}).differentiate({VarKind::Z, j}) ==
              a.differentiate({VarKind::Z, j}).differentiate({VarKind::Z, i}));
  }
}

TEST_CASE("inverse and sqrt") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Jet a = random_jet(rng, 2, 4, Chart::Heisenberg);
    a += Scalar(1) - a.constant_term();
    Jet one = Jet::constant(2, 4, Chart::Heisenberg, Scalar(1));
    CHECK(a * a.inverse() == one);
    Jet sq = (a * a).sqrt();
    CHECK(sq * sq == a * a);
    CHECK(sq.is_exact());
  }
}

TEST_CASE("exact substitution matches float evaluation of the composite") {
  auto rf = parse_expression("(2*z1 + i*z2*w)/(3 - i*w + z1*z2/2)", 2).to_rational();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  for (int k = 0; k < 100; ++k) {
    // The jet of rf at 0 composed with a polynomial argument, evaluated at a point, against direct evaluation.
    std::vector<cplx> z{{d(rng), d(rng)}, {d(rng), d(rng)}};
    double u = d(rng);
    JetVector args = identity_jets(2, 15, Chart::Holomorphic);
    Jet j = rf.evaluate(args);
    double t = 1e-2;
    std::vector<cplx> zt{z[0] * t, z[1] * t};
    cplx wt = u * t * t;
    cplx direct = rf.evaluate(std::vector<cplx>{zt[0], zt[1], wt});
    cplx via = j.evaluate(zt, {}, wt);
    CHECK(std::abs(direct - via) <= 1e-12);
  }
}
