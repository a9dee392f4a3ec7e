#include "crflat/normalization.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace crflat {

namespace {

Scalar coef(const Jet& j, int n, std::vector<int> zexp, int wexp) {
  Monomial m;
  m.zExp = std::move(zexp);
  m.zBarExp.assign(n, 0);
  m.uExp = wexp;
  return j.coefficient(m);
}

std::vector<int> unit(int n, int j) {
  std::vector<int> e(n, 0);
  e[j] = 1;
  return e;
}

std::vector<int> pair_exp(int n, int j, int l) {
  std::vector<int> e(n, 0);
  e[j] += 1;
  e[l] += 1;
  return e;
}

bool negligible(const Scalar& s, double tol) { return s.is_exact() ? s.is_zero() : s.abs() <= tol; }

// Unitary N x N matrix whose leading columns are the (orthonormal) columns of C.
Matrix complete_unitary(const Matrix& C, int N) {
  std::vector<std::vector<Scalar>> cols;
  for (int j = 0; j < C.cols(); ++j) cols.push_back(C.column(j));
  std::vector<bool> used(N, false);
  while (static_cast<int>(cols.size()) < N) {
    int best = -1;
    double bestNorm = -1.0;
    std::vector<Scalar> bestVec;
    Scalar bestNorm2;
    for (int k = 0; k < N; ++k) {
      if (used[k]) continue;
      std::vector<Scalar> v(N, Scalar(0));
      v[k] = Scalar(1);
      for (const auto& c : cols) {
        Scalar proj = c[k].conj();
        for (int i = 0; i < N; ++i) v[i] -= c[i] * proj;
      }
      Scalar nrm(0);
      for (const auto& x : v) nrm += x * x.conj();
      if (nrm.abs() > bestNorm + 1e-12) {
        bestNorm = nrm.abs();
        best = k;
        bestVec = v;
        bestNorm2 = nrm.real_part();
      }
    }
    if (best < 0 || bestNorm <= 1e-12) throw Error(ErrorKind::NormalizationFailure, "unitary completion failed");
    used[best] = true;
    Scalar inv = Scalar(1) / sqrt_nonneg(bestNorm2);
    for (auto& x : bestVec) x *= inv;
    cols.push_back(bestVec);
  }
  Matrix Q(N, N, Scalar(0));
  for (int j = 0; j < N; ++j) Q.set_column(j, cols[j]);
  return Q;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), Scalar(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

int max_order(const JetVector& F) {
  int m = kMaxOrder;
  for (const auto& j : F) m = std::min(m, j.order());
  return m;
}

}  // namespace

int p_bound(int n, int kappa) { return kappa * (2 * n + 1 - kappa) / 2; }

JetVector apply_target(const Matrix& H, const JetVector& F) { return mobius_action(H, F); }

JetVector apply_source(const JetVector& F, const Matrix& G) {
  int n = F[0].arity();
  JetVector args = mobius_action(G, identity_jets(n, max_order(F), Chart::Holomorphic));
  return compose(F, args);
}

Matrix a_matrix(const JetVector& F, int n) {
  Matrix A(n, n, Scalar(0));
  Scalar m2i(mpq_class(0), mpq_class(-2));
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) A(j, l) = m2i * coef(F[l], n, unit(n, j), 1);
  return A;
}

std::pair<double, double> star2_residuals(const JetVector& F, int n) {
  int N = static_cast<int>(F.size()) - 1;
  double worst = 0.0;
  auto bad = [&](const Scalar& s) { worst = std::max(worst, s.abs()); };
  for (int k = 0; k <= N; ++k) {
    for (const auto& [key, c] : F[k].terms()) {
      int w = key_weight(key);
      Monomial m = key_monomial(key, n);
      int zdeg = m.weight() - 2 * m.uExp;
      if (k < n) {
        if (w == 1) bad(c - Scalar(m.zExp[k] == 1 ? 1 : 0));
        else if (w == 2) bad(c);
        else if (w == 3 && !(zdeg == 1 && m.uExp == 1)) bad(c);
        else if (w == 0) bad(c);
      } else if (k < N) {
        if (w <= 1 || (w == 2 && m.uExp > 0)) bad(c);
      } else if (w <= 4) {
        bad(w == 2 && m.uExp == 1 ? c - Scalar(1) : c);
      }
    }
    // Required linear terms that might be missing altogether.
    if (k < n) bad(coef(F[k], n, unit(n, k), 0) - Scalar(1));
    if (k == N) bad(coef(F[N], n, std::vector<int>(n, 0), 1) - Scalar(1));
  }

  int order = 4;
  Jet lhs = Jet::zero(n, order, Chart::Heisenberg);
  Jet z2 = Jet::zero(n, order, Chart::Heisenberg);
  Matrix A = a_matrix(F, n);
  for (int l = 0; l < n; ++l) {
    Jet zl = Jet::variable(n, order, Chart::Heisenberg, {VarKind::Z, l});
    Jet zbl = Jet::variable(n, order, Chart::Heisenberg, {VarKind::ZBar, l});
    z2 += zl * zbl;
    Jet al = Jet::zero(n, order, Chart::Heisenberg);
    for (int j = 0; j < n; ++j) al += Jet::variable(n, order, Chart::Heisenberg, {VarKind::Z, j}) * A(j, l);
    lhs += zbl * al;
  }
  lhs = lhs * z2;
  Jet rhs = Jet::zero(n, order, Chart::Heisenberg);
  for (int mu = n; mu < N; ++mu) {
    Jet P = Jet::zero(n, order, Chart::Heisenberg);
    for (int j = 0; j < n; ++j)
      for (int l = j; l < n; ++l) {
        Scalar c = coef(F[mu], n, pair_exp(n, j, l), 0);
        if (c.is_zero()) continue;
        P += Jet::variable(n, order, Chart::Heisenberg, {VarKind::Z, j}) *
             Jet::variable(n, order, Chart::Heisenberg, {VarKind::Z, l}) * c;
      }
    rhs += P * P.conj();
  }
  return {worst, (lhs - rhs).max_abs()};
}

NormalizedJet normalize_star2(const JetVector& Fp, int n, double tol) {
  int N = static_cast<int>(Fp.size()) - 1;
  if (N < n) throw Error(ErrorKind::Dimension, "normalize_star2: too few components");
  if (max_order(Fp) < 4) throw Error(ErrorKind::Structural, "normalize_star2 needs jets of weighted order >= 4");
  for (const auto& c : Fp)
    if (!negligible(c.constant_term(), tol)) throw Error(ErrorKind::Structural, "normalize_star2 needs F_p(0) = 0");

  NormalizedJet out;
  out.stage = Stage::Star2;
  out.n = n;
  out.N = N;
  out.source = identity_matrix(n + 2);
  JetVector F = Fp;

  // Weight 1: lambda and U.
  Scalar lam2 = coef(F[N], n, std::vector<int>(n, 0), 1);
  cplx l2 = lam2.to_complex();
  bool realpos = lam2.is_exact() ? (lam2.is_real() && sgn(lam2.exact().re) > 0)
                                 : (l2.real() > tol && std::abs(l2.imag()) <= tol * std::max(1.0, l2.real()));
  if (!realpos) throw Error(ErrorKind::NonEmbedding, "g_w(0) is not a positive real: " + lam2.to_string());
  Scalar lam = sqrt_nonneg(lam2.real_part());
  Matrix C(N, n, Scalar(0));
  Scalar linv = Scalar(1) / lam;
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < n; ++j) C(k, j) = coef(F[k], n, unit(n, j), 0) * linv;
  Matrix gramC = adjoint(C) * C - identity_matrix(n);
  double ortho = max_abs(gramC);
  if (is_exact(gramC) ? ortho != 0.0 : ortho > tol)
    throw Error(ErrorKind::NormalizationFailure,
                "weight 1: columns of f_z(0) are not orthogonal with common norm (residual " + std::to_string(ortho) + ")");
  Matrix U = adjoint(complete_unitary(C, N));
  Automorphism H1 = make_isotropy(linv, Scalar(0), std::vector<Scalar>(N, Scalar(0)), U);
  F = apply_target(H1.matrix, F);
  out.steps.push_back({"weight 1: lambda and U", H1.matrix});

  // Weight 2: a cancels the w-linear terms of (f, phi).
  std::vector<Scalar> a;
  for (int k = 0; k < N; ++k) a.push_back(-coef(F[k], n, std::vector<int>(n, 0), 1));
  Automorphism H2 = make_isotropy(Scalar(1), Scalar(0), a, identity_matrix(N));
  F = apply_target(H2.matrix, F);
  out.steps.push_back({"weight 2: a", H2.matrix});

  // Weight 4: r cancels the real part of the w^2 term of g.
  Scalar d = coef(F[N], n, std::vector<int>(n, 0), 2);
  Automorphism H3 = make_isotropy(Scalar(1), -d.real_part(), std::vector<Scalar>(N, Scalar(0)), identity_matrix(N));
  F = apply_target(H3.matrix, F);
  out.steps.push_back({"weight 4: r", H3.matrix});

  out.target = H3.matrix * H2.matrix * H1.matrix;
  out.jets = F;
  out.exact = true;
  for (const auto& c : F)
    if (!c.is_exact()) out.exact = false;
  auto [res, cons] = star2_residuals(F, n);
  out.residual = res;
  out.constraintResidual = cons;
  bool ok = out.exact ? res == 0.0 : res <= tol;
  if (!ok) throw Error(ErrorKind::NormalizationFailure, "star2 postconditions fail (residual " + std::to_string(res) + ")");
  return out;
}

RankReport rank_from_matrix(const Matrix& A, double tol) {
  RankReport r;
  r.A = A;
  r.tol = tol;
  r.exact = is_exact(A);
  r.rank = matrix_rank(A, tol, &r.singular);
  Eigen::MatrixXcd M = to_eigen(A);
  Eigen::MatrixXcd Hh = (M + M.adjoint()) / 2.0;
  r.antiHermitian = ((M - M.adjoint()) / 2.0).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hh);
  for (int k = static_cast<int>(A.rows()) - 1; k >= 0; --k) r.eigen.push_back(es.eigenvalues()(k));
  r.advisory = "rank is lower semicontinuous in p; lower values occur only on thin sets";
  return r;
}

RankReport geometric_rank(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol) {
  MapSpec G = to_siegel(F);
  PointJets pj = jets_at(G, p, 4);
  NormalizedJet s2 = normalize_star2(pj.holomorphic, G.n, tol.normalize);
  RankReport r = rank_from_matrix(a_matrix(s2.jets, G.n), tol.rank);
  r.p = p;
  return r;
}

Kappa0Report kappa0(const MapSpec& F, const std::vector<BoundaryPoint>& samples, const Tolerances& tol,
                    Execution exec) {
  if (samples.empty()) throw Error(ErrorKind::Usage, "kappa0 needs at least one sample point");
  MapSpec G = to_siegel(F);
  Kappa0Report rep;
  rep.points = map_points<RankReport>(samples, [&](const BoundaryPoint& p) { return geometric_rank(G, p, tol); }, exec);
  for (const auto& o : rep.points)
    if (o.value) rep.kappa0 = std::max(rep.kappa0, o.value->rank);
  return rep;
}

Star3Result normalize_star3(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol) {
  MapSpec G = to_siegel(F);
  int n = G.n, N = G.N;
  PointJets pj = jets_at(G, p, 4);
  NormalizedJet s2 = normalize_star2(pj.holomorphic, n, tol.normalize);

  Star3Result out;
  JetVector jets = s2.jets;
  Matrix H = s2.target;
  Matrix Gs = identity_matrix(n + 2);
  std::vector<NormalizationStep> steps = s2.steps;

  Matrix A = a_matrix(jets, n);
  out.rank = rank_from_matrix(A, tol.rank);
  out.rank.p = p;
  Matrix B(n, n, Scalar(0));
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) B(j, l) = A(l, j);

  // Diagonalize the Hermitian part of B = A^T.
  std::vector<Scalar> mu(n, Scalar(0));
  Matrix V = identity_matrix(n);
  bool diagonal = is_exact(B);
  for (int j = 0; j < n && diagonal; ++j)
    for (int l = 0; l < n; ++l)
      if (j != l && !B(j, l).is_zero()) diagonal = false;
  bool sorted = diagonal;
  for (int j = 0; j + 1 < n && sorted; ++j)
    if (B(j, j).to_complex().real() < B(j + 1, j + 1).to_complex().real()) sorted = false;
  if (diagonal && sorted) {
    for (int j = 0; j < n; ++j) mu[j] = B(j, j);
  } else {
    Eigen::MatrixXcd M = to_eigen(B);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((M + M.adjoint()) / 2.0);
    for (int k = 0; k < n; ++k) {
      int src = n - 1 - k;
      mu[k] = Scalar(es.eigenvalues()(src));
      for (int i = 0; i < n; ++i) V(i, k) = Scalar(es.eigenvectors()(i, src));
    }
  }
  double scaleB = std::max(1.0, max_abs(B));
  out.fallback = out.rank.antiHermitian > tol.normalize * scaleB;
  int kappa = 0;
  double mumax = 0.0;
  for (const auto& m : mu) mumax = std::max(mumax, m.to_complex().real());
  for (const auto& m : mu) {
    double v = m.to_complex().real();
    if (v < -tol.rank * std::max(mumax, 1.0)) out.fallback = true;
    if (m.is_exact() ? sgn(m.exact().re) > 0 : v > tol.rank * std::max(mumax, 1.0)) ++kappa;
  }
  if (kappa != out.rank.rank) out.fallback = true;

  if (!(diagonal && sorted)) {
    Automorphism Sv = make_isotropy(Scalar(1), Scalar(0), std::vector<Scalar>(n, Scalar(0)), V);
    Automorphism Ht = make_isotropy(Scalar(1), Scalar(0), std::vector<Scalar>(N, Scalar(0)),
                                    block_diag(adjoint(V), identity_matrix(N - n)));
    jets = apply_target(Ht.matrix, apply_source(jets, Sv.matrix));
    Gs = Gs * Sv.matrix;
    H = Ht.matrix * H;
    steps.push_back({"source rotation V", Sv.matrix});
    steps.push_back({"target rotation diag(V^H, I)", Ht.matrix});
  }

  // d^2 f_j / dw^2 (0) = 0 for j < kappa via the source isotropy F_{1,0,c,I} and a new star2 pass.
  auto fww = [&](const JetVector& J) {
    double w = 0.0;
    for (int j = 0; j < kappa; ++j) w = std::max(w, coef(J[j], n, std::vector<int>(n, 0), 2).abs());
    return w;
  };
  for (int iter = 0; iter < 8 && kappa > 0; ++iter) {
    bool done = true;
    std::vector<Scalar> c(n, Scalar(0));
    for (int j = 0; j < kappa; ++j) {
      Scalar cw = coef(jets[j], n, std::vector<int>(n, 0), 2);
      if (!negligible(cw, tol.normalize * 1e-3)) done = false;
      c[j] = Scalar(mpq_class(0), mpq_class(2)) * cw / mu[j];
    }
    if (done) break;
    Automorphism Gc = make_isotropy(Scalar(1), Scalar(0), c, identity_matrix(n));
    jets = apply_source(jets, Gc.matrix);
    Gs = Gs * Gc.matrix;
    steps.push_back({"source isotropy c for f_ww", Gc.matrix});
    NormalizedJet again = normalize_star2(jets, n, tol.normalize);
    jets = again.jets;
    H = again.target * H;
    for (auto& s : again.steps) steps.push_back(s);
  }
  out.fwwResidual = fww(jets);

  // Rotate phi so that phi_{jl} = mu_{jl} z_j z_l on S0.
  MuData md;
  md.kappa0 = kappa;
  for (int j = 0; j < kappa; ++j) md.mu.push_back(mu[j].to_complex().real());
  std::vector<Scalar> muJL;
  for (int j = 0; j < kappa; ++j)
    for (int l = j; l < n; ++l) {
      md.S0.emplace_back(j, l);
      Scalar s = (j != l && l < kappa) ? sqrt_nonneg((mu[j] + mu[l]).real_part()) : sqrt_nonneg(mu[j].real_part());
      muJL.push_back(s);
      md.muJL.push_back(s.to_complex().real());
    }
  int s0 = static_cast<int>(md.S0.size());
  md.zeroComponents = N - n - s0;
  out.boundHolds = N - n >= p_bound(n, kappa);
  if (s0 > N - n)
    throw Error(ErrorKind::NormalizationFailure, "codimension too small for the computed rank");
  if (N > n) {
    Matrix W0(N - n, s0, Scalar(0));
    for (int s = 0; s < s0; ++s)
      for (int k = 0; k < N - n; ++k)
        W0(k, s) = coef(jets[n + k], n, pair_exp(n, md.S0[s].first, md.S0[s].second), 0) / muJL[s];
    double ortho = s0 > 0 ? max_abs(adjoint(W0) * W0 - identity_matrix(s0)) : 0.0;
    if (ortho > 1e-6)
      throw Error(ErrorKind::NormalizationFailure,
                  "weight 2: phi columns are not orthogonal with the mu_{jl} norms (residual " + std::to_string(ortho) + ")");
    Matrix Wf = complete_unitary(W0, N - n);
    Automorphism Hp = make_isotropy(Scalar(1), Scalar(0), std::vector<Scalar>(N, Scalar(0)),
                                    block_diag(identity_matrix(n), adjoint(Wf)), 1e-8);
    jets = apply_target(Hp.matrix, jets);
    H = Hp.matrix * H;
    steps.push_back({"target rotation of phi", Hp.matrix});
  }

  // Validation against the full normal form.
  double muRes = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      Scalar expect = (j == l && j < kappa) ? Scalar(mpq_class(0), mpq_class(1, 2)) * mu[j] : Scalar(0);
      muRes = std::max(muRes, (coef(jets[l], n, unit(n, j), 1) - expect).abs());
    }
  for (int k = 0; k < N - n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = j; l < n; ++l) {
        Scalar expect = Scalar(0);
        if (k < s0 && md.S0[k] == std::make_pair(j, l)) expect = muJL[k];
        muRes = std::max(muRes, (coef(jets[n + k], n, pair_exp(n, j, l), 0) - expect).abs());
      }
  out.muResidual = muRes;
  out.fwwResidual = fww(jets);

  out.jet.stage = Stage::Star3;
  out.jet.n = n;
  out.jet.N = N;
  out.jet.jets = jets;
  out.jet.target = H;
  out.jet.source = Gs;
  out.jet.steps = steps;
  auto [res, cons] = star2_residuals(jets, n);
  out.jet.residual = std::max({res, muRes, out.fwwResidual});
  out.jet.constraintResidual = cons;
  out.jet.exact = true;
  for (const auto& c : jets)
    if (!c.is_exact()) out.jet.exact = false;
  out.mu = md;
  return out;
}

}  // namespace crflat
