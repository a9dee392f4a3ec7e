#include "crflat/sff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crflat {

namespace {

int form_rank(const std::vector<std::vector<Scalar>>& images, int dim, double tol) {
  if (images.empty() || dim == 0) return 0;
  Matrix M(dim, static_cast<int>(images.size()), Scalar(0));
  for (int j = 0; j < M.cols(); ++j) M.set_column(j, images[j]);
  return matrix_rank(M, tol);
}

}  // namespace

SFFTensor sff_from_lift(const LiftFrame& f, double rankTol) {
  int n = f.n, N = f.N;
  MCForm mc = pullback_mc(f);
  int dim = 2 * n + 1;
  Matrix B(dim, n + 1, Scalar(0));
  for (int a = 0; a < n; ++a) B.set_column(a, mc.w[1 + a][0].at_base());
  B.set_column(n, mc.w[N + 1][0].at_base());
  if (matrix_rank(B, 1e-12) < n + 1) throw Error(ErrorKind::Chart, "omega^a_0 and theta are dependent at the base point");

  SFFTensor t;
  t.p = f.p;
  t.n = n;
  t.N = N;
  t.frameUsed = f.kind;
  t.exact = mc.exact;
  int cols = (N - n) * n;
  t.q.assign(N - n, Matrix(n, n, Scalar(0)));
  if (cols == 0) return t;
  Matrix R(dim, cols, Scalar(0));
  for (int m = 0; m < N - n; ++m)
    for (int b = 0; b < n; ++b) R.set_column(m * n + b, mc.w[n + 1 + m][1 + b].at_base());
  Matrix x = least_squares(B, R);
  t.residual = max_abs(B * x - R);
  std::vector<std::vector<Scalar>> images;
  for (int m = 0; m < N - n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        t.q[m](a, b) = x(a, m * n + b);
        t.norm = std::max(t.norm, t.q[m](a, b).abs());
      }
  for (int m = 0; m < N - n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t.symmetry = std::max(t.symmetry, (t.q[m](a, b) - t.q[m](b, a)).abs());
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<Scalar> v;
      for (int m = 0; m < N - n; ++m) v.push_back(t.q[m](a, b));
      images.push_back(v);
    }
  t.rank = form_rank(images, N - n, rankTol);
  return t;
}

SFFTensor sff_frame(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol) {
  return sff_from_lift(build_general_lift(F, p, tol.frame), tol.rank);
}

ExtrinsicReport sff_extrinsic(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol) {
  MapSpec G = to_siegel(F);
  int n = G.n, N = G.N;
  JetVector H = chart_jets(G, p, 3);
  ExtrinsicReport r;
  r.p = p;
  r.exact = true;
  for (const auto& h : H)
    if (!h.is_exact()) r.exact = false;

  // dbar rho o F along M for rho = sum |Z_A|^2 + (i/2)(W - conj W): (ftilde, -i/2).
  std::vector<Scalar> v0;
  for (int k = 0; k < N; ++k) v0.push_back(H[k].constant_term());
  v0.push_back(-half_i());
  Matrix E0(N + 1, 1, Scalar(0));
  E0.set_column(0, v0);
  Matrix E1(N + 1, n + 1, Scalar(0));
  E1.set_column(0, v0);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < N; ++k) E1(k, 1 + c) = apply_L(H[k], c).constant_term();
  r.spans.push_back({0, E0, matrix_rank(E0, tol.rank)});
  r.spans.push_back({1, E1, matrix_rank(E1, tol.rank)});
  if (r.spans[1].dimension < n + 1) throw Error(ErrorKind::NonEmbedding, "E_1(p) has dimension below n + 1");

  Matrix V(N + 1, n * n, Scalar(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < N; ++k) V(k, a * n + b) = apply_L(apply_L(H[k], b), a).constant_term();
  Matrix coeff = least_squares(E1, V);
  Matrix perp = V - E1 * coeff;
  r.form.assign(n, std::vector<std::vector<Scalar>>(n));
  std::vector<std::vector<Scalar>> images;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      r.form[a][b] = perp.column(a * n + b);
      for (const auto& s : r.form[a][b]) r.norm = std::max(r.norm, s.abs());
      if (b >= a) images.push_back(r.form[a][b]);
    }
  r.rank = form_rank(images, N + 1, tol.rank);
  return r;
}

EquivalenceReport check_equivalence(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol) {
  EquivalenceReport e;
  e.p = p;
  SFFTensor q = sff_frame(F, p, tol);
  ExtrinsicReport x = sff_extrinsic(F, p, tol);
  e.frameNorm = q.norm;
  e.extrinsicNorm = x.norm;
  e.frameRank = q.rank;
  e.extrinsicRank = x.rank;
  e.frameVanishes = q.exact ? q.norm == 0.0 : q.norm <= tol.vanish;
  e.extrinsicVanishes = x.exact ? x.norm == 0.0 : x.norm <= tol.vanish;
  e.agree = e.frameVanishes == e.extrinsicVanishes && e.frameRank == e.extrinsicRank;
  return e;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Flat: return "flat";
    case Verdict::NonFlat: return "non-flat";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<cplx> evaluate_witness(const Witness& w, const std::vector<cplx>& zw) {
  Matrix M = w.tau * w.L * w.sigma;
  std::vector<cplx> h(M.rows(), cplx(0.0, 0.0));
  for (int i = 0; i < M.rows(); ++i) {
    h[i] = M(i, 0).to_complex();
    for (int j = 1; j < M.cols(); ++j) h[i] += M(i, j).to_complex() * zw[j - 1];
  }
  if (std::abs(h[0]) < 1e-300) throw Error(ErrorKind::Pole, "witness has a pole at this point");
  std::vector<cplx> r;
  for (int i = 1; i < M.rows(); ++i) r.push_back(h[i] / h[0]);
  return r;
}

FlatnessVerdict flatness_verdict(const MapSpec& F, int samples, const Tolerances& tol, std::uint64_t seed,
                                 Execution exec) {
  if (samples < 1) throw Error(ErrorKind::Usage, "flatness_verdict needs at least one sample");
  MapSpec G = to_siegel(F);
  int n = G.n, N = G.N;
  FlatnessVerdict v;
  v.samplePoints = halton_points(n, samples, seed);
  auto qs = map_points<SFFTensor>(v.samplePoints, [&](const BoundaryPoint& p) { return sff_frame(G, p, tol); }, exec);
  int ok = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i].value) {
      ++ok;
      v.sffNorms.push_back(qs[i].value->norm);
      v.maxSFFNorm = std::max(v.maxSFFNorm, qs[i].value->norm);
    } else {
      v.sffNorms.push_back(std::numeric_limits<double>::quiet_NaN());
      v.diagnostics.push_back("point " + std::to_string(i) + ": " + qs[i].failure->message);
    }
  }
  if (ok == 0) {
    v.diagnostics.push_back("no sample point produced a second fundamental form");
    return v;
  }
  Kappa0Report k = kappa0(G, v.samplePoints, tol, exec);
  v.kappa0 = k.kappa0;
  if (v.maxSFFNorm > tol.vanish) {
    v.verdict = Verdict::NonFlat;
    return v;
  }
  if (v.kappa0 != 0) {
    v.diagnostics.push_back("second fundamental form vanishes but the geometric rank is " + std::to_string(v.kappa0));
    return v;
  }

  // Witness from the star3 data at the first usable sample point.
  for (std::size_t i = 0; i < v.samplePoints.size() && !v.witness; ++i) {
    if (!qs[i].value) continue;
    const BoundaryPoint& p = v.samplePoints[i];
    try {
      Star3Result s = normalize_star3(G, p, tol);
      JetVector lin = identity_jets(n, 4, Chart::Holomorphic);
      double dev = 0.0;
      for (int k = 0; k <= N; ++k) {
        Jet expect = k < n ? lin[k] : (k == N ? lin[n] : Jet::zero(n, 4, Chart::Holomorphic));
        dev = std::max(dev, (s.jet.jets[k] - expect.truncate(s.jet.jets[k].order())).max_abs());
      }
      if (dev > tol.vanish) {
        v.diagnostics.push_back("normalized jets at point " + std::to_string(i) + " are not linear (deviation " +
                                std::to_string(dev) + ")");
        continue;
      }
      Witness w;
      w.base = p;
      Matrix T = make_tauF(G, p).matrix;
      Matrix S = make_sigma0(p).matrix;
      w.tau = inverse(s.jet.target * T);
      w.sigma = inverse(S * s.jet.source);
      w.L = Matrix(N + 2, n + 2, Scalar(0));
      for (int j = 0; j <= n; ++j) w.L(j, j) = Scalar(1);
      w.L(N + 1, n + 1) = Scalar(1);
      for (const auto& q : halton_points(n, 20, seed + 7919)) {
        std::vector<cplx> zw;
        for (const auto& z : q.z0) zw.push_back(z.to_complex());
        zw.push_back(q.w0().to_complex());
        try {
          std::vector<cplx> a = evaluate(G, zw), b = evaluate_witness(w, zw);
          for (int k = 0; k <= N; ++k) w.residual = std::max(w.residual, std::abs(a[k] - b[k]));
          ++w.checkedPoints;
        } catch (const Error&) {
        }
      }
      v.witness = w;
    } catch (const Error& e) {
      v.diagnostics.push_back("witness at point " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!v.witness) {
    v.diagnostics.push_back("no witness could be constructed");
    return v;
  }
  if (v.witness->checkedPoints == 0 || v.witness->residual > tol.vanish) {
    v.diagnostics.push_back("witness residual " + std::to_string(v.witness->residual) + " exceeds tolerance");
    return v;
  }
  v.verdict = Verdict::Flat;
  return v;
}

}  // namespace crflat
