#pragma once

#include "crflat/frames.hpp"
#include "crflat/normalization.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crflat {

struct SFFTensor {
  BoundaryPoint p;
  int n = 0;
  int N = 0;
  std::vector<Matrix> q;  // q[m](a, b) = q^{n+1+m}_{ab}, symmetric n x n
  LiftKind frameUsed = LiftKind::General;
  double residual = 0;  // least-squares residual of the Cartan extraction
  double symmetry = 0;  // max |q_ab - q_ba|
  double norm = 0;      // max |q|
  int rank = 0;         // dimension of span{q(X, Y)}
  bool exact = false;
};

// q from omega^mu_beta = q^mu_{ab} omega^a_0 + c^mu_b theta at the base point of the lift.
SFFTensor sff_from_lift(const LiftFrame& f, double rankTol = 1e-6);
SFFTensor sff_frame(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol = {});

struct SpanReport {
  int k = 0;
  Matrix basis;  // columns span E_k(p) in C^{N+1}
  int dimension = 0;
};

struct ExtrinsicReport {
  BoundaryPoint p;
  std::vector<SpanReport> spans;  // E_0(p), E_1(p)
  std::vector<std::vector<std::vector<Scalar>>> form;  // form[a][b]: L_a L_b (dbar rho o F) orthogonal to E_1(p)
  double norm = 0;
  int rank = 0;
  bool exact = false;
};

ExtrinsicReport sff_extrinsic(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol = {});

struct EquivalenceReport {
  BoundaryPoint p;
  double frameNorm = 0;
  double extrinsicNorm = 0;
  int frameRank = 0;
  int extrinsicRank = 0;
  bool frameVanishes = false;
  bool extrinsicVanishes = false;
  bool agree = false;
};

// Compares vanishing and image rank of the two forms; disagreement is reported, not thrown.
EquivalenceReport check_equivalence(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol = {});

struct Witness {
  Matrix tau;    // target automorphism, (N+2) x (N+2)
  Matrix L;      // linear embedding (z, w) -> (z, 0, w), (N+2) x (n+2)
  Matrix sigma;  // source automorphism, (n+2) x (n+2)
  BoundaryPoint base;
  double residual = 0;  // max |tau L sigma - F| over fresh points
  int checkedPoints = 0;
};

enum class Verdict { Flat, NonFlat, Inconclusive };
const char* verdict_name(Verdict v);

struct FlatnessVerdict {
  std::vector<BoundaryPoint> samplePoints;
  std::vector<double> sffNorms;  // per sample point, NaN on failure
  double maxSFFNorm = 0;
  int kappa0 = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  std::vector<std::string> diagnostics;
};

FlatnessVerdict flatness_verdict(const MapSpec& F, int samples, const Tolerances& tol = {}, std::uint64_t seed = 0,
                                 Execution exec = Execution::Parallel);

// (z, w) -> tau L sigma (z, w) in affine coordinates.
std::vector<cplx> evaluate_witness(const Witness& w, const std::vector<cplx>& zw);

}  // namespace crflat
