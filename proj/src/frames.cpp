#include "crflat/frames.hpp"

#include <algorithm>
#include <cmath>

namespace crflat {

namespace {

JetVector column(const JetMatrix& E, int j) { return E.column(j); }

JetVector scaled(const JetVector& v, const Jet& s) {
  JetVector r;
  for (const auto& x : v) r.push_back(x * s);
  return r;
}

JetVector axpy(const JetVector& y, const Jet& a, const JetVector& x) {
  JetVector r = y;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += x[k] * a;
  return r;
}

Jet constant_like(const Jet& proto, const Scalar& c) { return Jet::constant(proto.arity(), proto.order(), proto.chart(), c); }

bool is_exact(const JetMatrix& E) {
  for (int i = 0; i < E.rows(); ++i)
    for (int j = 0; j < E.cols(); ++j)
      if (!E(i, j).is_exact()) return false;
  return true;
}

Matrix base_values(const JetMatrix& E) {
  Matrix M(E.rows(), E.cols(), Scalar(0));
  for (int i = 0; i < E.rows(); ++i)
    for (int j = 0; j < E.cols(); ++j) M(i, j) = E(i, j).constant_term();
  return M;
}

int min_order(const JetVector& v) {
  int m = kMaxOrder;
  for (const auto& x : v) m = std::min(m, x.order());
  return m;
}

// Normalizes v to <v,v> = 1; v must be spacelike at the base point.
JetVector normalize_spacelike(const JetVector& v, const char* what) {
  Jet nrm = form_eval(v, v);
  cplx c = nrm.constant_term().to_complex();
  if (c.real() <= 1e-14) throw Error(ErrorKind::NonEmbedding, std::string(what) + ": degenerate direction at the base point");
  return scaled(v, nrm.sqrt().inverse());
}

struct Columns {
  JetVector E0;
  std::vector<JetVector> Et;  // tangent directions before orthonormalization
  JetVector Er;               // Reeb direction d/du
};

Columns tangent_columns(const JetVector& H, int n) {
  Columns c;
  c.E0.push_back(constant_like(H[0], Scalar(1)));
  for (const auto& h : H) c.E0.push_back(h);
  int ordL = min_order(H) - 1, ordT = min_order(H) - 2;
  for (int b = 0; b < n; ++b) {
    JetVector v{Jet::zero(n, ordL, Chart::Heisenberg)};
    for (const auto& h : H) v.push_back(apply_L(h, b));
    c.Et.push_back(v);
  }
  c.Er.push_back(Jet::zero(n, ordT, Chart::Heisenberg));
  for (const auto& h : H) c.Er.push_back(apply_T(h));
  return c;
}

// Completes e_0, orthonormal e_alpha and the Reeb direction to a Q-frame.
JetMatrix complete_frame(const JetVector& E0, const std::vector<JetVector>& Ea, const JetVector& Er, int n, int N) {
  Jet b0 = form_eval(Er, E0);
  if (b0.constant_term().is_exact() ? b0.constant_term().is_zero() : b0.constant_term().abs() <= 1e-14)
    throw Error(ErrorKind::DegenerateReeb, "<d/du H, E_0> vanishes at the base point");
  Jet C = b0.inverse() * half_i();
  JetVector EN1 = scaled(Er, C);
  Jet imA = -(C * C.conj() * form_eval(Er, Er));
  for (int a = 0; a < n; ++a) {
    Jet B = -(C * form_eval(Er, Ea[a]));
    EN1 = axpy(EN1, B, Ea[a]);
    imA += B * B.conj();
  }
  EN1 = axpy(EN1, imA * Scalar(mpq_class(0), mpq_class(1)), E0);

  // Orthonormal completion by standard basis candidates.
  std::vector<JetVector> Emu;
  std::vector<bool> used(N + 2, false);
  const Jet& proto = E0[1];
  for (int m = n; m < N; ++m) {
    int best = -1;
    double bestNorm = -1.0;
    JetVector bestVec;
    for (int k = 1; k <= N; ++k) {
      if (used[k]) continue;
      JetVector c(N + 2, Jet::zero(n, proto.order(), Chart::Heisenberg));
      c[k] = constant_like(proto, Scalar(1));
      JetVector r = c;
      for (const auto& ea : Ea) r = axpy(r, -form_eval(c, ea), ea);
      for (const auto& em : Emu) r = axpy(r, -form_eval(c, em), em);
      Jet x = form_eval(c, EN1) * Scalar(mpq_class(0), mpq_class(2));
      Jet y = form_eval(c, E0) * Scalar(mpq_class(0), mpq_class(-2));
      r = axpy(r, -x, E0);
      r = axpy(r, -y, EN1);
      double nrm = form_eval(r, r).constant_term().to_complex().real();
      if (nrm > bestNorm + 1e-12) {
        bestNorm = nrm;
        best = k;
        bestVec = r;
      }
    }
    if (best < 0 || bestNorm <= 1e-12) throw Error(ErrorKind::NonEmbedding, "normal completion is rank deficient");
    used[best] = true;
    Emu.push_back(normalize_spacelike(bestVec, "normal completion"));
  }

  int ord = kMaxOrder;
  for (const JetVector* v : {&E0, &Er, static_cast<const JetVector*>(&EN1)}) ord = std::min(ord, min_order(*v));
  for (const auto& v : Ea) ord = std::min(ord, min_order(v));
  for (const auto& v : Emu) ord = std::min(ord, min_order(v));
  JetMatrix E(N + 2, N + 2, Jet::zero(n, ord, Chart::Heisenberg));
  auto put = [&](int j, const JetVector& v) {
    for (int i = 0; i < N + 2; ++i) E(i, j) = v[i].truncate(ord);
  };
  put(0, E0);
  for (int a = 0; a < n; ++a) put(1 + a, Ea[a]);
  for (int m = 0; m < N - n; ++m) put(1 + n + m, Emu[m]);
  put(N + 1, EN1);

  Jet d = determinant(E);
  if (!(d.is_exact() && d == constant_like(d, Scalar(1)))) {
    Jet fix = d.inverse();
    for (int i = 0; i < N + 2; ++i) E(i, N) = E(i, N) * fix;
  }
  return E;
}

// True when the Gram matrix of the vectors at the base point has a rational Cholesky factor, i.e. when
// Gram-Schmidt can stay exact.
bool exact_orthonormalization(const Matrix& V) {
  int n = V.cols();
  Matrix G = adjoint(V) * gram_J(V.rows() - 2) * V;
  if (!is_exact(G)) return false;
  for (int k = 0; k < n; ++k) {
    Scalar piv = G(k, k);
    if (piv.is_zero() || !sqrt_nonneg(piv.real_part()).is_exact()) return false;
    for (int i = k + 1; i < n; ++i) {
      Scalar f = G(i, k) / piv;
      for (int j = k + 1; j < n; ++j) G(i, j) -= f * G(k, j);
    }
  }
  return true;
}

// Base-point values of the vectors, as columns.
Matrix base_of(const std::vector<JetVector>& v) {
  Matrix M(static_cast<int>(v[0].size()), static_cast<int>(v.size()), Scalar(0));
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < v[j].size(); ++i) M(i, j) = v[j][i].constant_term();
  return M;
}

JetVector floated(const JetVector& v) {
  JetVector r;
  for (const auto& j : v) r.push_back(j.to_float());
  return r;
}

std::vector<JetVector> gram_schmidt(const std::vector<JetVector>& in) {
  std::vector<JetVector> out;
  for (const auto& v : in) {
    JetVector r = v;
    for (const auto& e : out) r = axpy(r, -form_eval(v, e), e);
    out.push_back(normalize_spacelike(r, "tangent frame"));
  }
  return out;
}

LiftFrame finish(LiftKind kind, const BoundaryPoint& p, int n, int N, JetMatrix E, const JetVector& H, double tol) {
  LiftFrame f;
  f.kind = kind;
  f.p = p;
  f.n = n;
  f.N = N;
  f.e = std::move(E);
  f.exact = is_exact(f.e);
  f.residuals = frame_residuals(f.e, N);
  f.adapted = adapted_defect(f, H);
  double bad = std::max({f.residuals.form, f.residuals.det, f.adapted});
  if (f.exact ? bad != 0.0 : bad > tol)
    throw Error(ErrorKind::Inconsistency, "lift violates the Q-frame conditions (residual " + std::to_string(bad) + ")");
  return f;
}

}  // namespace

const char* lift_kind_name(LiftKind k) {
  switch (k) {
    case LiftKind::General: return "general";
    case LiftKind::Spherical: return "spherical";
    case LiftKind::Transported: return "transported";
  }
  return "?";
}

FrameResiduals frame_residuals(const JetMatrix& e, int N) {
  FrameResiduals r;
  Matrix J = gram_J(N);
  for (int j = 0; j < N + 2; ++j)
    for (int k = 0; k < N + 2; ++k) {
      Jet g = form_eval(column(e, k), column(e, j));
      g += -J(j, k);
      r.form = std::max(r.form, g.max_abs());
      r.base = std::max(r.base, g.constant_term().abs());
    }
  Jet d = determinant(e);
  d += Scalar(-1);
  r.det = d.max_abs();
  r.base = std::max(r.base, d.constant_term().abs());
  return r;
}

double adapted_defect(const LiftFrame& f, const JetVector& H) {
  int n = f.n, N = f.N;
  Matrix E = base_values(f.e);
  double worst = 0.0;
  Scalar c0 = E(0, 0);
  if (c0.is_zero()) return 1.0;
  worst = std::max(worst, (E(0, 0) / c0 - Scalar(1)).abs());
  for (int k = 1; k < N + 2; ++k) worst = std::max(worst, (E(k, 0) / c0 - H[k - 1].constant_term()).abs());
  // Derivatives of the lift's own e_0 along L_beta and d/du.
  Matrix basis(N + 2, n + 2, Scalar(0)), rhs(N + 2, n + 1, Scalar(0));
  for (int i = 0; i < N + 2; ++i) {
    for (int j = 0; j <= n; ++j) basis(i, j) = E(i, j);
    basis(i, n + 1) = E(i, N + 1);
    for (int b = 0; b < n; ++b) rhs(i, b) = apply_L(f.e(i, 0), b).constant_term();
    rhs(i, n) = apply_T(f.e(i, 0)).constant_term();
  }
  Matrix x = least_squares(basis, rhs);
  Matrix res = basis * x - rhs;
  worst = std::max(worst, max_abs(res));
  // Holomorphic tangent directions use no e_{N+1}; the Reeb direction uses a real multiple of it.
  for (int b = 0; b < n; ++b) worst = std::max(worst, x(n + 1, b).abs());
  worst = std::max(worst, std::abs(x(n + 1, n).to_complex().imag()));
  return worst;
}

LiftFrame build_general_lift(const JetVector& H, int n, const BoundaryPoint& p, double tol) {
  int N = static_cast<int>(H.size()) - 1;
  if (min_order(H) < 3) throw Error(ErrorKind::Structural, "lift construction needs jets of order >= 3");
  Columns c = tangent_columns(H, n);
  if (!exact_orthonormalization(base_of(c.Et))) c = tangent_columns(floated(H), n);
  std::vector<JetVector> Ea = gram_schmidt(c.Et);
  return finish(LiftKind::General, p, n, N, complete_frame(c.E0, Ea, c.Er, n, N), H, tol);
}

LiftFrame build_general_lift(const MapSpec& F, const BoundaryPoint& p, double tol) {
  MapSpec G = to_siegel(F);
  return build_general_lift(chart_jets(G, p, kFrameOrder), G.n, p, tol);
}

LiftFrame build_spherical_lift(const MapSpec& F, const BoundaryPoint& p, double tol) {
  MapSpec G = to_siegel(F);
  int n = G.n, N = G.N;
  JetVector hol = translated_jets(G, p, 2);
  Matrix Jfg(n + 1, n + 1, Scalar(0));
  std::vector<int> zero(n, 0);
  for (int r = 0; r <= n; ++r) {
    const Jet& h = r < n ? hol[r] : hol[N];
    for (int j = 0; j <= n; ++j) {
      Monomial m;
      m.zExp = zero;
      m.zBarExp = zero;
      if (j < n) m.zExp[j] = 1;
      else m.uExp = 1;
      Jfg(r, j) = h.coefficient(m);
    }
  }
  if (determinant(Jfg).is_zero() || (!is_exact(Jfg) && std::abs(determinant(Jfg).to_complex()) <= 1e-12))
    throw Error(ErrorKind::Chart, "(f, g) is not locally invertible at this chart point");

  JetVector H = chart_jets(G, p, kFrameOrder);
  // e_alpha = Lhat_alpha e_0 where Lhat are the CR fields of the image coordinates zhat = f.
  auto directions = [&](const Columns& c) {
    JetMatrix Lf(n, n, Jet::zero(n, c.Et[0][1].order(), Chart::Heisenberg));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) Lf(a, b) = c.Et[b][1 + a];
    JetMatrix K;
    try {
      K = inverse(Lf);
    } catch (const Error&) {
      throw Error(ErrorKind::Chart, "CR differential of f is singular at this chart point");
    }
    std::vector<JetVector> direct;
    for (int a = 0; a < n; ++a) {
      JetVector v(N + 2, Jet::zero(n, K(0, 0).order(), Chart::Heisenberg));
      for (int b = 0; b < n; ++b) v = axpy(v, K(b, a), c.Et[b]);
      direct.push_back(v);
    }
    return direct;
  };
  Columns c = tangent_columns(H, n);
  Matrix Et0 = base_of(c.Et), Lf0(n, n, Scalar(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) Lf0(a, b) = Et0(1 + a, b);
  if (determinant(Lf0).is_zero()) throw Error(ErrorKind::Chart, "CR differential of f is singular at this chart point");
  if (!exact_orthonormalization(Et0 * inverse(Lf0))) c = tangent_columns(floated(H), n);
  std::vector<JetVector> direct = directions(c);
  bool ortho = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Scalar g = form_eval(direct[a], direct[b]).constant_term() - Scalar(a == b ? 1 : 0);
      if (g.is_exact() ? !g.is_zero() : g.abs() > tol) ortho = false;
    }
  std::vector<JetVector> Ea = gram_schmidt(direct);
  LiftFrame f = finish(LiftKind::Spherical, p, n, N, complete_frame(c.E0, Ea, c.Er, n, N), H, tol);
  f.directOrthonormal = ortho;
  return f;
}

LiftFrame transport_lift(const Automorphism& A, const LiftFrame& s, double tol) {
  if (A.matrix.rows() != s.N + 2) throw Error(ErrorKind::Dimension, "transport_lift: automorphism dimension mismatch");
  Membership m = membership(A.matrix, tol);
  if (!m.isGLQ) throw Error(ErrorKind::InvalidModel, "transport_lift needs an automorphism in GL^Q");
  Matrix B = A.matrix;
  if (!m.isSU) {
    B = scale(B, Scalar(1) / sqrt_nonneg(m.scale.real_part()));
    cplx d = determinant(B).to_complex();
    cplx root = std::pow(std::conj(d), 1.0 / (s.N + 2));
    B = scale(B, Scalar(root));
  }
  LiftFrame f = s;
  f.kind = LiftKind::Transported;
  f.e = inverse(B) * s.e;
  f.exact = is_exact(f.e);
  f.residuals = frame_residuals(f.e, s.N);
  return f;
}

OneForm OneForm::conj() const {
  OneForm r;
  for (const auto& c : dzb) r.dz.push_back(c.conj());
  for (const auto& c : dz) r.dzb.push_back(c.conj());
  r.du = du.conj();
  return r;
}

std::vector<Scalar> OneForm::at_base() const {
  std::vector<Scalar> v;
  for (const auto& c : dz) v.push_back(c.constant_term());
  for (const auto& c : dzb) v.push_back(c.constant_term());
  v.push_back(du.constant_term());
  return v;
}

double OneForm::max_abs() const {
  double m = du.max_abs();
  for (const auto& c : dz) m = std::max(m, c.max_abs());
  for (const auto& c : dzb) m = std::max(m, c.max_abs());
  return m;
}

OneForm operator+(const OneForm& a, const OneForm& b) {
  OneForm r = a;
  for (std::size_t k = 0; k < r.dz.size(); ++k) {
    r.dz[k] += b.dz[k];
    r.dzb[k] += b.dzb[k];
  }
  r.du += b.du;
  return r;
}

OneForm operator-(const OneForm& a, const OneForm& b) { return a + Scalar(-1) * b; }

OneForm operator*(const Scalar& s, const OneForm& a) {
  OneForm r = a;
  for (auto& c : r.dz) c = c * s;
  for (auto& c : r.dzb) c = c * s;
  r.du = r.du * s;
  return r;
}

double MCRelations::worst() const {
  return std::max({w00, wTopA, wAtop, wAB, trace, wMu0, thetaReal, full, structure});
}

MCForm pullback_mc(const LiftFrame& f) {
  int n = f.n, N = f.N, D = N + 2;
  JetMatrix einv;
  try {
    einv = inverse(f.e);
  } catch (const Error&) {
    throw Error(ErrorKind::Singular, "frame is singular at the base point");
  }
  std::vector<Var> vars;
  for (int a = 0; a < n; ++a) vars.push_back({VarKind::Z, a});
  for (int a = 0; a < n; ++a) vars.push_back({VarKind::ZBar, a});
  vars.push_back({VarKind::U, 0});

  std::vector<JetMatrix> comp;  // omega(d/dx_k)
  for (const auto& v : vars) {
    JetMatrix de(D, D, f.e(0, 0));
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) de(i, j) = f.e(i, j).differentiate(v);
    comp.push_back(einv * de);
  }

  MCForm out;
  out.n = n;
  out.N = N;
  out.w.assign(D, std::vector<OneForm>(D));
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      OneForm w;
      for (int a = 0; a < n; ++a) w.dz.push_back(comp[a](i, j));
      for (int a = 0; a < n; ++a) w.dzb.push_back(comp[n + a](i, j));
      w.du = comp[2 * n](i, j);
      out.w[i][j] = w;
    }
  out.exact = f.exact;
  for (const auto& row : out.w)
    for (const auto& w : row)
      if (!w.du.is_exact()) out.exact = false;

  MCRelations& r = out.relations;
  const auto& w = out.w;
  const Scalar twoI(mpq_class(0), mpq_class(2));
  r.w00 = (w[0][0] + w[N + 1][N + 1].conj()).max_abs();
  for (int A = 1; A <= N; ++A) {
    r.wTopA = std::max(r.wTopA, (w[N + 1][A] - twoI * w[A][0].conj()).max_abs());
    r.wAtop = std::max(r.wAtop, (w[A][N + 1] + half_i() * w[0][A].conj()).max_abs());
    for (int B = 1; B <= N; ++B) r.wAB = std::max(r.wAB, (w[A][B] + w[B][A].conj()).max_abs());
  }
  OneForm tr = w[0][0];
  for (int i = 1; i < D; ++i) tr = tr + w[i][i];
  r.trace = tr.max_abs();
  for (int m = n + 1; m <= N; ++m) r.wMu0 = std::max(r.wMu0, w[m][0].max_abs());
  r.thetaReal = (w[N + 1][0] - w[N + 1][0].conj()).max_abs();

  // J omega + omega^H J, entrywise.
  Matrix J = gram_J(N);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      OneForm s = Scalar(0) * w[0][0];
      for (int k = 0; k < D; ++k) {
        if (!J(i, k).is_zero()) s = s + J(i, k) * w[k][j];
        if (!J(k, j).is_zero()) s = s + J(k, j) * w[k][i].conj();
      }
      r.full = std::max(r.full, s.max_abs());
    }

  // (d omega + omega ^ omega)(d/dx_a, d/dx_b) at the base point.
  int V = static_cast<int>(vars.size());
  for (int a = 0; a < V; ++a)
    for (int b = a + 1; b < V; ++b) {
      Matrix wa = base_values(comp[a]), wb = base_values(comp[b]);
      Matrix s = wa * wb - wb * wa;
      for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
          Scalar dv = comp[b](i, j).differentiate(vars[a]).constant_term() -
                      comp[a](i, j).differentiate(vars[b]).constant_term();
          r.structure = std::max(r.structure, (dv + s(i, j)).abs());
        }
    }
  return out;
}

}  // namespace crflat
