#include "crflat/map_model.hpp"

#include "crflat/error.hpp"
#include "crflat/expr.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace crflat {

const char* model_name(Model m) { return m == Model::Ball ? "ball" : "siegel"; }

bool MapSpec::is_exact() const {
  for (const auto& c : components)
    if (!c.num().is_exact() || !c.den().is_exact()) return false;
  return true;
}

BoundaryPoint BoundaryPoint::origin(int n) { return {std::vector<Scalar>(n, Scalar(0)), Scalar(0)}; }

Scalar BoundaryPoint::w0() const {
  Scalar s(0);
  for (const auto& z : z0) s += z * z.conj();
  return u0 + s * Scalar::imag_unit();
}

bool BoundaryPoint::is_exact() const {
  if (!u0.is_exact()) return false;
  for (const auto& z : z0)
    if (!z.is_exact()) return false;
  return true;
}

BoundaryPoint BoundaryPoint::to_float() const {
  BoundaryPoint p;
  for (const auto& z : z0) p.z0.push_back(z.to_float());
  p.u0 = u0.to_float();
  return p;
}

std::vector<Scalar> BoundaryPoint::coordinates() const {
  std::vector<Scalar> x = z0;
  x.push_back(w0());
  return x;
}

std::vector<Scalar> BoundaryPoint::neg(const std::vector<Scalar>& v) {
  std::vector<Scalar> r;
  for (const auto& x : v) r.push_back(-x);
  return r;
}

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

MapSpec make_map(Model model, int n, int N, const std::vector<std::string>& components, const std::string& name) {
  if (n < 1 || N < n) throw Error(ErrorKind::Dimension, "map dimensions must satisfy 1 <= n <= N");
  if (static_cast<int>(components.size()) != N + 1)
    throw Error(ErrorKind::Dimension, "expected " + std::to_string(N + 1) + " components, got " +
                                          std::to_string(components.size()));
  MapSpec F;
  F.model = model;
  F.n = n;
  F.N = N;
  F.name = name;
  for (const auto& c : components) F.components.push_back(parse_expression(c, n).to_rational());
  return F;
}

MapSpec parse_map(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed map document", line, col);
  }
  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 1, 1);
    return j[key];
  };
  std::string model = require("model").get<std::string>();
  if (model != "ball" && model != "siegel") throw ParseError("model must be 'ball' or 'siegel'", 1, 1);
  const auto& jn = require("n");
  const auto& jN = require("N");
  if (!jn.is_number_integer() || !jN.is_number_integer()) throw ParseError("n and N must be integers", 1, 1);
  int n = jn.get<int>(), N = jN.get<int>();
  if (n < 1 || N < n) throw Error(ErrorKind::Dimension, "map dimensions must satisfy 1 <= n <= N");
  const auto& comps = require("components");
  if (!comps.is_array()) throw ParseError("components must be an array of strings", 1, 1);
  if (static_cast<int>(comps.size()) != N + 1)
    throw Error(ErrorKind::Dimension, "expected " + std::to_string(N + 1) + " components, got " +
                                          std::to_string(comps.size()));
  MapSpec F;
  F.model = model == "ball" ? Model::Ball : Model::Siegel;
  F.n = n;
  F.N = N;
  if (j.contains("name")) F.name = j["name"].get<std::string>();
  std::size_t search = 0;
  for (const auto& c : comps) {
    if (!c.is_string()) throw ParseError("components must be strings", 1, 1);
    std::string s = c.get<std::string>();
    std::size_t at = text.find('"' + s + '"', search);
    int line = 1, col = 0;
    if (at != std::string::npos) {
      auto lc = line_column(text, at + 1);
      line = lc.first;
      col = lc.second - 1;
      search = at + s.size() + 2;
    }
    F.components.push_back(parse_expression(s, n, line, col).to_rational());
  }
  return F;
}

MapSpec load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open map file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

std::vector<RationalFunction> cayley_rho(int n) {
  int nv = n + 1;
  Polynomial iw = Polynomial::variable(nv, n) * Scalar::imag_unit();
  Polynomial one = Polynomial::constant(nv, Scalar(1));
  Polynomial den = one - iw;
  std::vector<RationalFunction> r;
  for (int j = 0; j < n; ++j) r.emplace_back(Polynomial::variable(nv, j) * Scalar(2), den);
  r.emplace_back(one + iw, den);
  return r;
}

std::vector<RationalFunction> cayley_rho_inverse(int n) {
  int nv = n + 1;
  Polynomial W = Polynomial::variable(nv, n);
  Polynomial one = Polynomial::constant(nv, Scalar(1));
  Polynomial den = one + W;
  std::vector<RationalFunction> r;
  for (int j = 0; j < n; ++j) r.emplace_back(Polynomial::variable(nv, j), den);
  r.emplace_back((one - W) * Scalar::imag_unit(), den);
  return r;
}

MapSpec cayley(CayleyDirection dir, const MapSpec& F) {
  bool toSiegel = dir == CayleyDirection::BallToSiegel;
  if (F.model != (toSiegel ? Model::Ball : Model::Siegel))
    throw Error(ErrorKind::InvalidModel, "cayley direction does not match the map's model");
  auto inner = toSiegel ? cayley_rho(F.n) : cayley_rho_inverse(F.n);
  auto outer = toSiegel ? cayley_rho_inverse(F.N) : cayley_rho(F.N);
  MapSpec G = F;
  G.model = toSiegel ? Model::Siegel : Model::Ball;
  G.components = substitute(outer, substitute(F.components, inner));
  return G;
}

MapSpec to_siegel(const MapSpec& F) { return F.model == Model::Siegel ? F : cayley(CayleyDirection::BallToSiegel, F); }

MapSpec compose_maps(const MapSpec& outer, const MapSpec& inner) {
  if (outer.n != inner.N || outer.model != inner.model)
    throw Error(ErrorKind::Dimension, "compose_maps: incompatible dimensions or models");
  MapSpec G;
  G.model = outer.model;
  G.n = inner.n;
  G.N = outer.N;
  G.name = outer.name.empty() || inner.name.empty() ? outer.name + inner.name : outer.name + "o" + inner.name;
  G.components = substitute(outer.components, inner.components);
  return G;
}

std::vector<Scalar> evaluate(const MapSpec& F, const std::vector<Scalar>& x) {
  std::vector<Scalar> r;
  for (const auto& c : F.components) r.push_back(c.evaluate(x));
  return r;
}

std::vector<cplx> evaluate(const MapSpec& F, const std::vector<cplx>& x) {
  std::vector<cplx> r;
  for (const auto& c : F.components) r.push_back(c.evaluate(x));
  return r;
}

JetVector sigma0_jets(const BoundaryPoint& p, int order) {
  int n = p.arity();
  JetVector id = identity_jets(n, order, Chart::Holomorphic);
  JetVector args;
  Jet w = id[n];
  w += p.w0();
  for (int j = 0; j < n; ++j) {
    Jet z = id[j];
    z += p.z0[j];
    args.push_back(z);
    w += id[j] * (Scalar(mpq_class(0), mpq_class(2)) * p.z0[j].conj());
  }
  args.push_back(w);
  return args;
}

JetVector translated_jets(const MapSpec& F, const BoundaryPoint& p, int order) {
  if (F.model != Model::Siegel) throw Error(ErrorKind::InvalidModel, "jets are taken in the Siegel model");
  if (p.arity() != F.n) throw Error(ErrorKind::Dimension, "boundary point dimension mismatch");
  JetVector args = sigma0_jets(p, order);
  JetVector out;
  for (const auto& c : F.components) {
    try {
      out.push_back(c.evaluate(args));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SingularSubstitution) throw Error(ErrorKind::Pole, "map has a pole at the base point");
      throw;
    }
  }
  return out;
}

PointJets jets_at(const MapSpec& F, const BoundaryPoint& p, int order) {
  JetVector h = translated_jets(F, p, order);
  PointJets r;
  int N = F.N;
  for (const auto& c : h) r.value.push_back(c.constant_term());
  Jet g = h[N];
  g += -r.value[N].conj();
  for (int j = 0; j < N; ++j) {
    Jet f = h[j];
    f += -r.value[j];
    r.holomorphic.push_back(f);
    g -= h[j] * (Scalar(mpq_class(0), mpq_class(2)) * r.value[j].conj());
  }
  r.holomorphic.push_back(g);
  r.restricted = restrict_to_heisenberg(r.holomorphic);
  return r;
}

JetVector chart_jets(const MapSpec& F, const BoundaryPoint& p, int order) {
  return restrict_to_heisenberg(translated_jets(F, p, order));
}

Jet verify_proper(const MapSpec& F, int order, const BoundaryPoint& p) {
  MapSpec G = to_siegel(F);
  JetVector H = chart_jets(G, p, order);
  int N = G.N;
  Jet r = (H[N] - H[N].conj()) * Scalar(mpq_class(0), mpq_class(1, 2));
  for (int A = 0; A < N; ++A) r += H[A] * H[A].conj();
  return r;
}

Jet verify_proper(const MapSpec& F, int order) { return verify_proper(F, order, BoundaryPoint::origin(F.n)); }

}  // namespace crflat
