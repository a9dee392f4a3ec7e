#include "support.hpp"

#include <doctest.h>

using namespace crflat;
using namespace testing_support;

TEST_CASE("sigma0") {
  Automorphism id = make_sigma0(BoundaryPoint::origin(2));
  CHECK(max_abs(id.matrix - identity_matrix(4)) == 0.0);

  BoundaryPoint p{{Scalar(1)}, Scalar(0)};
  CHECK(p.w0() == Scalar::imag_unit());
  Automorphism s = make_sigma0(p);
  Matrix expected(3, 3, Scalar(0));
  expected(0, 0) = Scalar(1);
  expected(1, 0) = Scalar(1);
  expected(1, 1) = Scalar(1);
  expected(2, 0) = Scalar::imag_unit();
  expected(2, 1) = Scalar(q(0), q(2));
  expected(2, 2) = Scalar(1);
  CHECK(max_abs(s.matrix - expected) == 0.0);
  // (z, w) -> (z+1, w+i+2iz)
  std::vector<Scalar> x{Scalar(q(1, 3)), Scalar(q(2, 5), q(1, 7))};
  auto y = mobius_action(s.matrix, x);
  CHECK(y[0] == x[0] + Scalar(1));
  CHECK(y[1] == x[1] + Scalar::imag_unit() + Scalar(q(0), q(2)) * x[0]);
  // A maps [1:0:...:0] to the point of its first column.
  auto o = mobius_action(s.matrix, std::vector<Scalar>{Scalar(0), Scalar(0)});
  CHECK(o[0] == Scalar(1));
  CHECK(o[1] == Scalar::imag_unit());

  std::mt19937 rng(12);
  for (int k = 0; k < 20; ++k) {
    BoundaryPoint r = random_point(rng, 1 + k % 3);
    Automorphism a = make_sigma0(r);
    CHECK(membership(a.matrix).isSU);
    auto at0 = evaluate(a.rational, BoundaryPoint::origin(r.arity()).coordinates());
    CHECK(at0 == r.coordinates());
  }
}

TEST_CASE("tauF") {
  MapSpec L = to_siegel(load_map(fixture("linear.map")));
  Automorphism t0 = make_tauF(L, BoundaryPoint::origin(1));
  CHECK(max_abs(t0.matrix - identity_matrix(4)) == 0.0);

  MapSpec W = to_siegel(load_map(fixture("whitney.map")));
  std::mt19937 rng(13);
  for (int k = 0; k < 5; ++k) {
    BoundaryPoint p = random_point(rng, 1);
    Automorphism t = make_tauF(W, p);
    auto Fp = evaluate(W, p.coordinates());
    auto zero = evaluate(t.rational, Fp);
    for (const auto& z : zero) CHECK(z.is_zero());
    auto zero2 = mobius_action(t.matrix, Fp);
    for (const auto& z : zero2) CHECK(z.is_zero());
    CHECK(membership(t.matrix).isSU);
    // Entries against the literal pattern: first column (1, -f, -conj g), last row (., -2i conj f, 1).
    CHECK(t.matrix(1, 0) == -Fp[0]);
    CHECK(t.matrix(2, 0) == -Fp[1]);
    CHECK(t.matrix(3, 0) == -Fp[2].conj());
    CHECK(t.matrix(3, 1) == Scalar(q(0), q(-2)) * Fp[0].conj());
    CHECK(t.matrix(3, 2) == Scalar(q(0), q(-2)) * Fp[1].conj());
  }
  CHECK_THROWS_AS(make_tau_for_value({Scalar(1), Scalar(0)}), Error);
}

TEST_CASE("isotropy") {
  Automorphism id = make_isotropy(Scalar(1), Scalar(0), {Scalar(0)}, identity_matrix(1));
  CHECK(max_abs(id.matrix - identity_matrix(3)) == 0.0);
  for (long lam2 : {1L, 2L, 4L}) {
    Scalar lam = Scalar(q(lam2, 2));
    Automorphism iso = make_isotropy(lam, Scalar(0), {Scalar(0)}, identity_matrix(1));
    Membership m = membership(iso.matrix);
    CHECK(m.isGLQ);
    CHECK(m.isSU == (lam == Scalar(1)));
    CHECK(m.scale == lam * lam);
  }
  auto f = isotropy_factors(Scalar(2), Scalar(1), {Scalar(1)}, identity_matrix(1));
  Automorphism direct = make_isotropy(Scalar(2), Scalar(1), {Scalar(1)}, identity_matrix(1));
  CHECK(max_abs(f[0] * f[1] * f[2] - direct.matrix) == 0.0);

  std::mt19937 rng(21);
  for (int k = 0; k < 10; ++k) {
    int n = 1 + k % 3;
    std::vector<Scalar> a;
    for (int j = 0; j < n; ++j) a.push_back(small_rational(rng));
    Scalar lam(q(1 + k % 3, 1 + k % 2));
    Scalar r = small_rational(rng).real_part();
    Matrix U = random_unitary(rng, n, true);
    Automorphism iso = make_isotropy(lam, r, a, U);
    auto fac = isotropy_factors(lam, r, a, U);
    CHECK(max_abs(fac[0] * fac[1] * fac[2] - iso.matrix) == 0.0);
    Membership m = membership(iso.matrix);
    CHECK(m.isGLQ);
    CHECK(m.isSU == (lam == Scalar(1)));
    std::vector<BoundaryPoint> pts;
    for (int t = 0; t < 20; ++t) pts.push_back(random_point(rng, n));
    CHECK(action_discrepancy(iso, pts) == 0.0);
    auto fixed = evaluate(iso.rational, BoundaryPoint::origin(n).coordinates());
    for (const auto& z : fixed) CHECK(z.is_zero());
  }
  CHECK_THROWS_AS(make_isotropy(Scalar(-1), Scalar(0), {Scalar(0)}, identity_matrix(1)), Error);
  Matrix bad = identity_matrix(1);
  bad(0, 0) = Scalar(2);
  CHECK_THROWS_AS(make_isotropy(Scalar(1), Scalar(0), {Scalar(0)}, bad), Error);
}

TEST_CASE("compose and inverse") {
  std::mt19937 rng(31);
  for (int k = 0; k < 5; ++k) {
    int n = 1 + k % 2;
    Automorphism A = random_su(rng, n);
    Automorphism B = random_su(rng, n);
    Automorphism AB = compose(A, B);
    CHECK(membership(AB.matrix).isSU);
    Automorphism I = compose(A, inverse(A));
    CHECK(max_abs(I.matrix - identity_matrix(n + 2)) == 0.0);
    BoundaryPoint p = random_point(rng, n);
    Automorphism s = make_sigma0(p);
    CHECK(max_abs(compose(inverse(s), s).matrix - identity_matrix(n + 2)) == 0.0);
    std::vector<BoundaryPoint> pts;
    for (int t = 0; t < 20; ++t) pts.push_back(random_point(rng, n, 2));
    CHECK(action_discrepancy(AB, pts) == 0.0);
    for (const auto& x : pts) {
      auto lhs = mobius_action(AB.matrix, x.coordinates());
      auto rhs = mobius_action(A.matrix, mobius_action(B.matrix, x.coordinates()));
      CHECK(lhs == rhs);
    }
    // Composition of isotropies fixes 0.
    Automorphism i1 = make_isotropy(Scalar(2), Scalar(1), std::vector<Scalar>(n, Scalar(q(1, 3))), identity_matrix(n));
    Automorphism i2 = make_isotropy(Scalar(q(1, 2)), Scalar(-3), std::vector<Scalar>(n, Scalar(q(0), q(1))),
                                    random_unitary(rng, n, false));
    auto fixed = evaluate(compose(i1, i2).rational, BoundaryPoint::origin(n).coordinates());
    for (const auto& z : fixed) CHECK(z.is_zero());
    Membership m1 = membership(i1.matrix), m2 = membership(i2.matrix), m12 = membership(compose(i1, i2).matrix);
    CHECK(m12.scale == m1.scale * m2.scale);
  }
}

TEST_CASE("null cone preservation and float composition") {
  std::mt19937 rng(41);
  for (int k = 0; k < 100; ++k) {
    Automorphism iso = make_isotropy(Scalar(q(3, 2)), Scalar(q(1, 5)), {Scalar(q(1, 3), q(1, 2))}, identity_matrix(1));
    BoundaryPoint p = random_point(rng, 1);
    std::vector<Scalar> Z{Scalar(1), p.z0[0], p.w0()};
    CHECK(form_eval(Z, Z).is_zero());
    std::vector<Scalar> AZ(3, Scalar(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) AZ[i] += iso.matrix(i, j) * Z[j];
    CHECK(form_eval(AZ, AZ).is_zero());
  }
  for (int k = 0; k < 50; ++k) {
    Matrix A = to_float(random_su(rng, 2).matrix), B = to_float(random_su(rng, 2).matrix);
    std::vector<cplx> x{{0.1, 0.2}, {-0.3, 0.05}, {0.2, 0.1}};
    auto lhs = mobius_action(A * B, x);
    auto rhs = mobius_action(A, mobius_action(B, x));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12 * (1 + std::abs(lhs[i])));
  }
}

TEST_CASE("automorphism files") {
  Automorphism a = load_aut(fixture("isotropy_lambda2.aut"));
  Membership m = membership(a.matrix);
  CHECK_FALSE(m.isSU);
  CHECK(m.isGLQ);
  Automorphism s = load_aut(fixture("sigma0_sample.aut"));
  CHECK(membership(s.matrix).isSU);
  CHECK_THROWS_AS(parse_aut("{\"kind\": \"nope\"}"), ParseError);
  CHECK_THROWS_AS(parse_aut("{\"kind\": "), ParseError);
}
