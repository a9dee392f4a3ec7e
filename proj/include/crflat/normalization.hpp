#pragma once

#include "crflat/automorphisms.hpp"
#include "crflat/sampling.hpp"

#include <string>
#include <utility>
#include <vector>

namespace crflat {

struct Tolerances {
  double rank = 1e-6;
  double vanish = 1e-8;
  double frame = 1e-10;
  double normalize = 1e-9;
};

enum class Stage { Star2, Star3 };

struct NormalizationStep {
  std::string description;
  Matrix matrix;
};

struct NormalizedJet {
  Stage stage = Stage::Star2;
  int n = 0;
  int N = 0;
  JetVector jets;                        // holomorphic, F = (f, phi, g)
  Matrix target;                         // H: product of the target isotropies
  Matrix source;                         // G: product of the source isotropies (identity for star2)
  std::vector<NormalizationStep> steps;  // in order of application
  double residual = 0;                   // worst deviation from the stage's normal form
  double constraintResidual = 0;         // |<zbar, a(z)>|z|^2 - |phi2(z)|^2| coefficientwise
  bool exact = false;
};

struct RankReport {
  BoundaryPoint p;
  Matrix A;                       // n x n, A_{jl} = -2i d^2 f_l / dz_j dw at 0
  std::vector<double> singular;   // descending
  std::vector<double> eigen;      // of the Hermitian part, descending
  double antiHermitian = 0;
  int rank = 0;
  double tol = 0;
  bool exact = false;
  std::string advisory;
};

struct MuData {
  int kappa0 = 0;
  std::vector<double> mu;                      // mu_j, j < kappa0 (0-based)
  std::vector<std::pair<int, int>> S0;         // (j, l), j < kappa0, j <= l < n, lexicographic
  std::vector<double> muJL;                    // mu_{jl} on S0
  int zeroComponents = 0;                      // N - n - |S0|
};

struct Star3Result {
  NormalizedJet jet;
  MuData mu;
  RankReport rank;
  bool fallback = false;      // A was not Hermitian (or not semidefinite) within tolerance
  double muResidual = 0;      // deviation of the mu_{jl} relations
  double fwwResidual = 0;     // max |d^2 f_j / dw^2 (0)|, j < kappa0
  bool boundHolds = false;    // N - n >= P
};

// P re-based to source CR dimension n: kappa (2n + 1 - kappa) / 2.
int p_bound(int n, int kappa);

// Partial normalization of the jets F_p (F_p(0) = 0) by target isotropies.
NormalizedJet normalize_star2(const JetVector& Fp, int n, double tol = 1e-9);
// Worst violation of the star2 normal form, and the residual of the constraint <zbar, a(z)>|z|^2 = |phi2(z)|^2.
std::pair<double, double> star2_residuals(const JetVector& F, int n);
Matrix a_matrix(const JetVector& F, int n);

RankReport rank_from_matrix(const Matrix& A, double tol);
RankReport geometric_rank(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol = {});

struct Kappa0Report {
  int kappa0 = 0;
  std::vector<Outcome<RankReport>> points;
};
Kappa0Report kappa0(const MapSpec& F, const std::vector<BoundaryPoint>& samples, const Tolerances& tol = {},
                    Execution exec = Execution::Parallel);

Star3Result normalize_star3(const MapSpec& F, const BoundaryPoint& p, const Tolerances& tol = {});

// Applies a target matrix (N+2) on the left and a source matrix (n+2) on the right of holomorphic jets.
JetVector apply_target(const Matrix& H, const JetVector& F);
JetVector apply_source(const JetVector& F, const Matrix& G);

}  // namespace crflat
