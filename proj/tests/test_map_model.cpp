#include "support.hpp"

#include "crflat/error.hpp"
#include "crflat/expr.hpp"

#include <doctest.h>

using namespace crflat;
using namespace testing_support;

namespace {

Jet hz(int n, int m, int i) { return Jet::variable(n, m, Chart::Holomorphic, {VarKind::Z, i}); }
Jet hw(int n, int m) { return Jet::variable(n, m, Chart::Holomorphic, {VarKind::U, 0}); }

}  // namespace

TEST_CASE("parse_map and errors") {
  auto e = parse_expression("(2*z1)/(1 - i*w)", 1);
  CHECK(e.root().kind == ExprNode::Kind::Div);
  RationalFunction rf = e.to_rational();
  CHECK(rf.evaluate(std::vector<Scalar>{Scalar(1), Scalar(0)}) == Scalar(2));

  CHECK_THROWS_AS(make_map(Model::Ball, 1, 2, {"z1", "w"}), Error);
  try {
    parse_expression("z1 + ", 1);
    FAIL("expected a syntax error");
  } catch (const ParseError& err) {
    CHECK(err.kind() == ErrorKind::Parse);
    CHECK(err.column() == 6);
    CHECK(std::string(err.what()).find("end of input") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expression("sqrt(w)", 1), ParseError);
  try {
    parse_expression("w^(1/2)", 1);
  } catch (const ParseError& err) {
    CHECK(err.kind() == ErrorKind::NonRational);
  }
  try {
    parse_expression("z3", 2);
  } catch (const ParseError& err) {
    CHECK(err.kind() == ErrorKind::Dimension);
  }
  try {
    parse_map("{\n  \"model\": \"ball\",\n  \"n\": 1, \"N\": 2,\n  \"components\": [\"z1\", \"0\", \"w*\"]\n}");
    FAIL("expected a syntax error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 4);
  }
  CHECK(parse_expression("1.25*w^-2", 1).to_rational().evaluate(std::vector<Scalar>{Scalar(0), Scalar(2)}) ==
        Scalar(q(5, 16)));
}

TEST_CASE("cayley transform") {
  auto rho = cayley_rho(1);
  std::vector<Scalar> origin{Scalar(0), Scalar(0)};
  CHECK(rho[0].evaluate(origin) == Scalar(0));
  CHECK(rho[1].evaluate(origin) == Scalar(1));
  std::vector<Scalar> pt{Scalar(1), Scalar::imag_unit()};
  CHECK(rho[1].evaluate(pt) == Scalar(0));
  CHECK(rho[0].evaluate(pt) == Scalar(1));

  for (const char* f : {"whitney.map", "whitney3.map", "linear.map"}) {
    MapSpec F = load_map(fixture(f));
    MapSpec back = cayley(CayleyDirection::SiegelToBall, cayley(CayleyDirection::BallToSiegel, F));
    CHECK(back.model == Model::Ball);
    for (std::size_t k = 0; k < F.components.size(); ++k) CHECK(back.components[k].equals(F.components[k]));
  }
  MapSpec L = to_siegel(load_map(fixture("linear.map")));
  CHECK(L.components[0].equals(parse_expression("z1", 1).to_rational()));
  CHECK(L.components[2].equals(parse_expression("w", 1).to_rational()));
}

TEST_CASE("jets_at") {
  MapSpec L = to_siegel(load_map(fixture("linear.map")));
  PointJets j0 = jets_at(L, BoundaryPoint::origin(1), 4);
  CHECK(j0.holomorphic[0] == hz(1, 4, 0));
  CHECK(j0.holomorphic[1].is_zero());
  CHECK(j0.holomorphic[2] == hw(1, 4));

  MapSpec W = to_siegel(load_map(fixture("whitney.map")));
  PointJets jw = jets_at(W, BoundaryPoint::origin(1), 4);
  // g = 2w/(1-w^2), f = z(1-iw)/(1-w^2): order-4 jets by hand.
  CHECK(jw.holomorphic[2] == hw(1, 4) * Scalar(2));
  CHECK(jw.holomorphic[0] == hz(1, 4, 0) - hz(1, 4, 0) * hw(1, 4) * Scalar::imag_unit());

  std::mt19937 rng(5);
  for (int k = 0; k < 6; ++k) {
    BoundaryPoint p = random_point(rng, 1);
    PointJets jp = jets_at(W, p, 4);
    for (const auto& c : jp.holomorphic) CHECK(c.constant_term().is_zero());
  }
}

TEST_CASE("re-expansion at the inverse point recovers the jets at 0") {
  MapSpec W = to_siegel(load_map(fixture("whitney.map")));
  std::mt19937 rng(9);
  for (int k = 0; k < 3; ++k) {
    BoundaryPoint p = random_point(rng, 1);
    // F_p as a rational map: tau_p o F o sigma_p written with explicit polynomial formulas.
    std::vector<Scalar> v = evaluate(W, p.coordinates());
    int nv = 2;
    Polynomial z = Polynomial::variable(nv, 0), w = Polynomial::variable(nv, 1);
    Polynomial one = Polynomial::constant(nv, Scalar(1));
    std::vector<RationalFunction> sigma{
        RationalFunction(z + one * p.z0[0]),
        RationalFunction(w + one * p.w0() + z * (Scalar(q(0), q(2)) * p.z0[0].conj()))};
    auto Fs = substitute(W.components, sigma);
    int tv = 3;
    Polynomial Z0 = Polynomial::variable(tv, 0), Z1 = Polynomial::variable(tv, 1), G = Polynomial::variable(tv, 2);
    Polynomial one3 = Polynomial::constant(tv, Scalar(1));
    std::vector<RationalFunction> tau{
        RationalFunction(Z0 - one3 * v[0]), RationalFunction(Z1 - one3 * v[1]),
        RationalFunction(G - one3 * v[2].conj() - Z0 * (Scalar(q(0), q(2)) * v[0].conj()) -
                         Z1 * (Scalar(q(0), q(2)) * v[1].conj()))};
    MapSpec Fp = W;
    Fp.components = substitute(tau, Fs);
    PointJets back = jets_at(Fp, p.negated(), 4);
    PointJets at0 = jets_at(W, BoundaryPoint::origin(1), 4);
    for (int c = 0; c < 3; ++c) CHECK(back.holomorphic[c] == at0.holomorphic[c]);
  }
}

TEST_CASE("verify_proper") {
  for (const char* f : {"linear.map", "linear3.map", "whitney.map", "whitney3.map", "whitney_normal.map"}) {
    MapSpec F = load_map(fixture(f));
    for (int m = 2; m <= 6; ++m) CHECK(verify_proper(F, m).is_zero());
  }
  MapSpec bad = make_map(Model::Siegel, 1, 2, {"z1", "0", "w + z1^2"});
  Jet r = verify_proper(bad, 4);
  CHECK_FALSE(r.is_zero());
  CHECK(r.weighted_order() == 2);
  std::mt19937 rng(1);
  MapSpec W = to_siegel(load_map(fixture("whitney.map")));
  for (int k = 0; k < 3; ++k) CHECK(verify_proper(W, 4, random_point(rng, 1)).is_zero());
}
