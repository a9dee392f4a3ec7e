#pragma once

#include "crflat/automorphisms.hpp"
#include "crflat/hermitian.hpp"

#include <string>
#include <vector>

namespace crflat {

enum class LiftKind { General, Spherical, Transported };

const char* lift_kind_name(LiftKind k);

struct FrameResiduals {
  double form = 0;  // max |e^H J e - J| over all jet coefficients
  double det = 0;   // max |det e - 1| over all jet coefficients
  double base = 0;  // same two quantities at the base point only
};

// Frame field in the Heisenberg chart around a base point. Column 0 is e_0,
// columns 1..n are e_alpha, n+1..N are e_mu, N+1 is e_{N+1}.
struct LiftFrame {
  LiftKind kind = LiftKind::General;
  BoundaryPoint p;
  int n = 0;
  int N = 0;
  JetMatrix e;
  FrameResiduals residuals;
  double adapted = 0;              // first-order adapted defect at the base point
  bool directOrthonormal = false;  // spherical lift: e_alpha were orthonormal before Gram-Schmidt
  bool exact = false;
};

// Jet order used for the map H; frame columns are accurate to weight kFrameOrder - 2.
constexpr int kFrameOrder = 5;

// Built from the chart jets of F o sigma0_p, with F in Siegel form.
LiftFrame build_general_lift(const MapSpec& F, const BoundaryPoint& p, double tol = 1e-10);
LiftFrame build_general_lift(const JetVector& H, int n, const BoundaryPoint& p, double tol = 1e-10);
LiftFrame build_spherical_lift(const MapSpec& F, const BoundaryPoint& p, double tol = 1e-10);
// A^{-1} s for a lift s of A(M); A in GL^Q is first rescaled into SU(N+1,1).
LiftFrame transport_lift(const Automorphism& A, const LiftFrame& s, double tol = 1e-10);

FrameResiduals frame_residuals(const JetMatrix& e, int N);
// Defect of the first-order adapted conditions at the base point: e_0 over the point H(0), L_beta e_0 in
// span(e_0, e_alpha), d/du e_0 in span(e_0, e_alpha, e_{N+1}) with a real e_{N+1} coefficient.
double adapted_defect(const LiftFrame& f, const JetVector& H);

// Coefficients of a 1-form over the chart cobasis (dz_a, dzbar_a, du).
struct OneForm {
  JetVector dz;
  JetVector dzb;
  Jet du;

  OneForm conj() const;
  // Coefficient vector at the base point, ordered (dz_1..dz_n, dzbar_1..dzbar_n, du).
  std::vector<Scalar> at_base() const;
  double max_abs() const;
};

OneForm operator+(const OneForm& a, const OneForm& b);
OneForm operator-(const OneForm& a, const OneForm& b);
OneForm operator*(const Scalar& s, const OneForm& a);

struct MCRelations {
  double w00 = 0;        // omega^0_0 + conj omega^{N+1}_{N+1}
  double wTopA = 0;      // omega^{N+1}_A - 2i conj omega^A_0
  double wAtop = 0;      // omega^A_{N+1} + (i/2) conj omega^0_A
  double wAB = 0;        // omega^A_B + conj omega^B_A
  double trace = 0;
  double wMu0 = 0;       // omega^mu_0
  double thetaReal = 0;  // theta - conj theta
  double full = 0;       // J omega + omega^H J
  double structure = 0;  // d omega + omega ^ omega at the base point
  double worst() const;
};

struct MCForm {
  int n = 0;
  int N = 0;
  std::vector<std::vector<OneForm>> w;  // w[i][j] = omega^i_j
  MCRelations relations;
  bool exact = false;
};

MCForm pullback_mc(const LiftFrame& f);

}  // namespace crflat
