#include "support.hpp"

#include "crflat/hermitian.hpp"

#include <doctest.h>

using namespace crflat;
using namespace testing_support;

namespace {

std::vector<Scalar> basis(int d, int k) {
  std::vector<Scalar> e(d, Scalar(0));
  e[k] = Scalar(1);
  return e;
}

std::vector<Scalar> random_vector(std::mt19937& rng, int d) {
  std::vector<Scalar> v;
  for (int k = 0; k < d; ++k) v.push_back(small_rational(rng));
  return v;
}

}  // namespace

TEST_CASE("form_eval") {
  int N = 2, d = N + 2;
  CHECK(form_eval(basis(d, 0), basis(d, N + 1)) == Scalar(q(0), q(-1, 2)));
  CHECK(form_eval(basis(d, N + 1), basis(d, 0)) == Scalar(q(0), q(1, 2)));
  for (int A = 1; A <= N; ++A) CHECK(form_eval(basis(d, A), basis(d, A)) == Scalar(1));
  std::mt19937 rng(2);
  Matrix J = gram_J(N);
  for (int k = 0; k < 100; ++k) {
    auto Z = random_vector(rng, d), W = random_vector(rng, d), V = random_vector(rng, d);
    Scalar c = small_rational(rng);
    CHECK(form_eval(Z, Z).is_real());
    CHECK(form_eval(Z, W).conj() == form_eval(W, Z));
    std::vector<Scalar> cz = Z, zv = Z;
    for (int i = 0; i < d; ++i) {
      cz[i] *= c;
      zv[i] += V[i];
    }
    CHECK(form_eval(cz, W) == c * form_eval(Z, W));
    CHECK(form_eval(W, cz) == c.conj() * form_eval(W, Z));
    CHECK(form_eval(zv, W) == form_eval(Z, W) + form_eval(V, W));
    CHECK(form_eval(Z, W) == std_inner(hat_reduction(Z), W));
    // Z'^H J Z
    Scalar viaJ(0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) viaJ += W[i].conj() * J(i, j) * Z[j];
    CHECK(viaJ == form_eval(Z, W));
  }
}

TEST_CASE("hat reduction") {
  int d = 4;
  auto h = hat_reduction(basis(d, 0));
  CHECK(h[0] == Scalar(0));
  CHECK(h[d - 1] == Scalar(q(0), q(-1, 2)));
  std::mt19937 rng(4);
  auto Z = random_vector(rng, d);
  auto hh = hat_reduction(hat_reduction(Z));
  CHECK(hh[0] == Z[0] * Scalar(q(1, 4)));
  CHECK(hh[d - 1] == Z[d - 1] * Scalar(q(1, 4)));
  CHECK(hh[1] == Z[1]);
}

TEST_CASE("membership") {
  Membership id = membership(identity_matrix(4));
  CHECK(id.isSU);
  CHECK(id.isGLQ);
  CHECK(make_frame_matrix(identity_matrix(4)).qFrame);
  Matrix D = identity_matrix(4);
  D(3, 3) = Scalar(2);
  CHECK_FALSE(membership(D).isGLQ);
  CHECK_FALSE(membership(D).isSU);
  CHECK_THROWS_AS(membership(Matrix(3, 3, Scalar(0))), Error);
}

TEST_CASE("mobius action") {
  std::vector<Scalar> pt{Scalar(q(1, 3)), Scalar(q(0), q(2))};
  CHECK(mobius_action(identity_matrix(3), pt) == pt);
  Matrix A(3, 3, Scalar(0));
  A(0, 2) = Scalar(1);
  A(1, 1) = Scalar(1);
  A(2, 0) = Scalar(1);
  CHECK_THROWS_AS(mobius_action(A, std::vector<Scalar>{Scalar(1), Scalar(0)}), Error);
}
