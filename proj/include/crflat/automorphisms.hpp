#pragma once

#include "crflat/hermitian.hpp"
#include "crflat/map_model.hpp"

#include <string>
#include <vector>

namespace crflat {

enum class AutKind { Sigma0, TauF, Isotropy, Matrix, Composite };

const char* aut_kind_name(AutKind k);

struct AutParams {
  AutKind kind = AutKind::Matrix;
  BoundaryPoint p;               // sigma0, tauF (source point)
  std::vector<Scalar> value;     // tauF: F(p) = (ftilde_0, g_0)
  Scalar lambda = Scalar(1);     // isotropy
  Scalar r = Scalar(0);
  std::vector<Scalar> a;
  Matrix U;
};

// An automorphism of the Heisenberg hypersurface in C^{dim+1}, as a matrix of size dim+2 and a rational map.
struct Automorphism {
  AutParams params;
  int dim = 0;
  Matrix matrix;
  MapSpec rational;
};

Automorphism make_sigma0(const BoundaryPoint& p);
Automorphism make_tauF(const MapSpec& F, const BoundaryPoint& p);
// The target translation sending value = (ftilde_0, g_0) on the hypersurface to 0.
Automorphism make_tau_for_value(const std::vector<Scalar>& value);
Automorphism make_isotropy(const Scalar& lambda, const Scalar& r, const std::vector<Scalar>& a, const Matrix& U,
                           double tol = 1e-10);
// The three factors F_{l,0,0,I}, F_{1,0,0,U}, F_{1,r,a,I}.
std::vector<Matrix> isotropy_factors(const Scalar& lambda, const Scalar& r, const std::vector<Scalar>& a,
                                     const Matrix& U);
Automorphism from_matrix(const Matrix& A);
Automorphism compose(const Automorphism& A, const Automorphism& B);
Automorphism inverse(const Automorphism& A);

// The linear fractional map of a (dim+2)-square matrix.
MapSpec rational_from_matrix(const Matrix& A);

// Largest discrepancy between the matrix action and the rational form at the given points.
double action_discrepancy(const Automorphism& A, const std::vector<BoundaryPoint>& points);

Scalar parse_constant(const std::string& text);
Automorphism parse_aut(const std::string& text, const std::string& base_dir = ".");
Automorphism load_aut(const std::string& path);

}  // namespace crflat
