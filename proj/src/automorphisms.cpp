#include "crflat/automorphisms.hpp"

#include "crflat/expr.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace crflat {

const char* aut_kind_name(AutKind k) {
  switch (k) {
    case AutKind::Sigma0: return "sigma0";
    case AutKind::TauF: return "tauF";
    case AutKind::Isotropy: return "isotropy";
    case AutKind::Matrix: return "matrix";
    case AutKind::Composite: return "composite";
  }
  return "unknown";
}

namespace {

Scalar two_i() { return Scalar(mpq_class(0), mpq_class(2)); }

MapSpec siegel_map(int dim, std::vector<RationalFunction> comps) {
  MapSpec M;
  M.model = Model::Siegel;
  M.n = dim;
  M.N = dim;
  M.components = std::move(comps);
  return M;
}

void check_on_hypersurface(const std::vector<Scalar>& value, double tol) {
  int N = static_cast<int>(value.size()) - 1;
  Scalar s(0);
  for (int j = 0; j < N; ++j) s += value[j] * value[j].conj();
  Scalar defect = value[N].imag_part() - s;
  bool ok = defect.is_exact() ? defect.is_zero() : defect.abs() <= tol * std::max(1.0, s.abs());
  if (!ok) throw Error(ErrorKind::OffHypersurface, "point is not on the Heisenberg hypersurface");
}

}  // namespace

Automorphism make_sigma0(const BoundaryPoint& p) {
  int n = p.arity();
  Automorphism A;
  A.dim = n;
  A.params.kind = AutKind::Sigma0;
  A.params.p = p;
  Scalar w0 = p.w0();
  A.matrix = identity_matrix(n + 2);
  for (int k = 0; k < n; ++k) {
    A.matrix(k + 1, 0) = p.z0[k];
    A.matrix(n + 1, k + 1) = two_i() * p.z0[k].conj();
  }
  A.matrix(n + 1, 0) = w0;
  int nv = n + 1;
  Polynomial one = Polynomial::constant(nv, Scalar(1));
  std::vector<RationalFunction> comps;
  Polynomial w = Polynomial::variable(nv, n) + one * w0;
  for (int k = 0; k < n; ++k) {
    comps.emplace_back(Polynomial::variable(nv, k) + one * p.z0[k]);
    w += Polynomial::variable(nv, k) * (two_i() * p.z0[k].conj());
  }
  comps.emplace_back(w);
  A.rational = siegel_map(n, comps);
  return A;
}

Automorphism make_tau_for_value(const std::vector<Scalar>& value) {
  int N = static_cast<int>(value.size()) - 1;
  check_on_hypersurface(value, 1e-10);
  Automorphism A;
  A.dim = N;
  A.params.kind = AutKind::TauF;
  A.params.value = value;
  A.matrix = identity_matrix(N + 2);
  for (int k = 0; k < N; ++k) {
    A.matrix(k + 1, 0) = -value[k];
    A.matrix(N + 1, k + 1) = -(two_i() * value[k].conj());
  }
  A.matrix(N + 1, 0) = -value[N].conj();
  int nv = N + 1;
  Polynomial one = Polynomial::constant(nv, Scalar(1));
  std::vector<RationalFunction> comps;
  Polynomial g = Polynomial::variable(nv, N) - one * value[N].conj();
  for (int k = 0; k < N; ++k) {
    comps.emplace_back(Polynomial::variable(nv, k) - one * value[k]);
    g -= Polynomial::variable(nv, k) * (two_i() * value[k].conj());
  }
  comps.emplace_back(g);
  A.rational = siegel_map(N, comps);
  return A;
}

Automorphism make_tauF(const MapSpec& F, const BoundaryPoint& p) {
  MapSpec G = to_siegel(F);
  std::vector<Scalar> value = evaluate(G, p.coordinates());
  Automorphism A = make_tau_for_value(value);
  A.params.p = p;
  return A;
}

std::vector<Matrix> isotropy_factors(const Scalar& lambda, const Scalar& r, const std::vector<Scalar>& a,
                                     const Matrix& U) {
  int n = static_cast<int>(a.size());
  Matrix L = identity_matrix(n + 2);
  for (int k = 1; k <= n; ++k) L(k, k) = lambda;
  L(n + 1, n + 1) = lambda * lambda;
  Matrix R = identity_matrix(n + 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i + 1, j + 1) = U(i, j);
  Matrix T = identity_matrix(n + 2);
  Scalar a2(0);
  for (int k = 0; k < n; ++k) {
    T(0, k + 1) = -(two_i() * a[k].conj());
    T(k + 1, n + 1) = a[k];
    a2 += a[k] * a[k].conj();
  }
  T(0, n + 1) = -(r + Scalar::imag_unit() * a2);
  return {L, R, T};
}

Automorphism make_isotropy(const Scalar& lambda, const Scalar& r, const std::vector<Scalar>& a, const Matrix& U,
                           double tol) {
  int n = static_cast<int>(a.size());
  if (U.rows() != n || U.cols() != n) throw Error(ErrorKind::Dimension, "isotropy: U must be n x n");
  bool lam_ok = lambda.is_exact() ? (lambda.is_real() && sgn(lambda.exact().re) > 0)
                                  : (std::abs(lambda.to_complex().imag()) <= tol && lambda.to_complex().real() > 0);
  if (!lam_ok) throw Error(ErrorKind::Structural, "isotropy: lambda must be a positive real");
  bool r_ok = r.is_exact() ? r.is_real() : std::abs(r.to_complex().imag()) <= tol;
  if (!r_ok) throw Error(ErrorKind::Structural, "isotropy: r must be real");
  Matrix dev = adjoint(U) * U - identity_matrix(n);
  bool unitary = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dev(i, j).is_exact() ? !dev(i, j).is_zero() : dev(i, j).abs() > tol) unitary = false;
  if (!unitary) throw Error(ErrorKind::Structural, "isotropy: U is not unitary");

  Automorphism A;
  A.dim = n;
  A.params.kind = AutKind::Isotropy;
  A.params.lambda = lambda;
  A.params.r = r;
  A.params.a = a;
  A.params.U = U;
  Scalar a2(0);
  for (const auto& x : a) a2 += x * x.conj();
  A.matrix = identity_matrix(n + 2);
  for (int k = 0; k < n; ++k) {
    A.matrix(0, k + 1) = -(two_i() * a[k].conj());
    Scalar Ua(0);
    for (int j = 0; j < n; ++j) {
      A.matrix(k + 1, j + 1) = lambda * U(k, j);
      Ua += U(k, j) * a[j];
    }
    A.matrix(k + 1, n + 1) = lambda * Ua;
  }
  A.matrix(0, n + 1) = -(r + Scalar::imag_unit() * a2);
  A.matrix(n + 1, n + 1) = lambda * lambda;

  int nv = n + 1;
  Polynomial w = Polynomial::variable(nv, n);
  Polynomial den = Polynomial::constant(nv, Scalar(1)) - w * (r + Scalar::imag_unit() * a2);
  for (int k = 0; k < n; ++k) den -= Polynomial::variable(nv, k) * (two_i() * a[k].conj());
  std::vector<Polynomial> shifted;
  for (int k = 0; k < n; ++k) shifted.push_back(Polynomial::variable(nv, k) + w * a[k]);
  std::vector<RationalFunction> comps;
  for (int k = 0; k < n; ++k) {
    Polynomial num(nv);
    for (int j = 0; j < n; ++j) num += shifted[j] * (lambda * U(k, j));
    comps.emplace_back(num, den);
  }
  comps.emplace_back(w * (lambda * lambda), den);
  A.rational = siegel_map(n, comps);
  return A;
}

MapSpec rational_from_matrix(const Matrix& A) {
  int d = A.rows();
  int dim = d - 2;
  int nv = dim + 1;
  auto row = [&](int i) {
    Polynomial p = Polynomial::constant(nv, A(i, 0));
    for (int j = 1; j < d; ++j) p += Polynomial::variable(nv, j - 1) * A(i, j);
    return p;
  };
  Polynomial den = row(0);
  std::vector<RationalFunction> comps;
  for (int i = 1; i < d; ++i) comps.emplace_back(row(i), den);
  return siegel_map(dim, comps);
}

Automorphism from_matrix(const Matrix& A) {
  Automorphism r;
  r.dim = A.rows() - 2;
  r.params.kind = AutKind::Matrix;
  r.matrix = A;
  r.rational = rational_from_matrix(A);
  return r;
}

Automorphism compose(const Automorphism& A, const Automorphism& B) {
  if (A.dim != B.dim) throw Error(ErrorKind::Dimension, "compose: automorphism dimensions differ");
  Automorphism r;
  r.dim = A.dim;
  r.params.kind = AutKind::Composite;
  r.matrix = A.matrix * B.matrix;
  r.rational = compose_maps(A.rational, B.rational);
  return r;
}

Automorphism inverse(const Automorphism& A) {
  Automorphism r = from_matrix(inverse(A.matrix));
  r.params.kind = AutKind::Composite;
  return r;
}

double action_discrepancy(const Automorphism& A, const std::vector<BoundaryPoint>& points) {
  double worst = 0.0;
  for (const auto& p : points) {
    std::vector<Scalar> x = p.coordinates();
    std::vector<Scalar> viaMatrix = mobius_action(A.matrix, x);
    std::vector<Scalar> viaMap = evaluate(A.rational, x);
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, (viaMatrix[k] - viaMap[k]).abs());
  }
  return worst;
}

Scalar parse_constant(const std::string& text) {
  RationalFunction rf = parse_expression(text, 1).to_rational();
  if (rf.num().total_degree() > 0 || rf.den().total_degree() > 0)
    throw Error(ErrorKind::Parse, "expected a constant, got '" + text + "'");
  std::vector<Scalar> zero{Scalar(0), Scalar(0)};
  return rf.evaluate(zero);
}

namespace {

Scalar constant_field(const nlohmann::json& j) {
  if (j.is_string()) return parse_constant(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_number()) return Scalar(j.get<double>());
  throw Error(ErrorKind::Parse, "expected a constant");
}

std::vector<Scalar> vector_field(const nlohmann::json& j) {
  std::vector<Scalar> v;
  for (const auto& x : j) v.push_back(constant_field(x));
  return v;
}

Matrix matrix_field(const nlohmann::json& j) {
  int r = static_cast<int>(j.size());
  if (r == 0) throw Error(ErrorKind::Parse, "empty matrix");
  int c = static_cast<int>(j[0].size());
  Matrix m(r, c, Scalar(0));
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j[i].size()) != c) throw Error(ErrorKind::Dimension, "ragged matrix");
    for (int k = 0; k < c; ++k) m(i, k) = constant_field(j[i][k]);
  }
  return m;
}

}  // namespace

Automorphism parse_aut(const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed automorphism document", line, col);
  }
  if (!j.contains("kind")) throw ParseError("missing field 'kind'", 1, 1);
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "sigma0") {
      BoundaryPoint p{vector_field(j.at("z0")), constant_field(j.at("u0"))};
      if (j.contains("dim") && j["dim"].get<int>() != p.arity()) throw Error(ErrorKind::Dimension, "dim mismatch");
      return make_sigma0(p);
    }
    if (kind == "tauF") {
      MapSpec F;
      if (j.at("map").is_string()) {
        std::filesystem::path mp(j["map"].get<std::string>());
        if (mp.is_relative()) mp = std::filesystem::path(base_dir) / mp;
        F = load_map(mp.string());
      } else {
        F = parse_map(j["map"].dump());
      }
      BoundaryPoint p{vector_field(j.at("z0")), constant_field(j.at("u0"))};
      return make_tauF(F, p);
    }
    if (kind == "isotropy") {
      std::vector<Scalar> a = vector_field(j.at("a"));
      Matrix U = j.contains("U") ? matrix_field(j["U"]) : identity_matrix(static_cast<int>(a.size()));
      return make_isotropy(constant_field(j.at("lambda")), constant_field(j.at("r")), a, U);
    }
    if (kind == "matrix") return from_matrix(matrix_field(j.at("entries")));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad automorphism field: ") + e.what(), 1, 1);
  }
  throw ParseError("unknown automorphism kind '" + kind + "'", 1, 1);
}

Automorphism load_aut(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open automorphism file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_aut(ss.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace crflat
