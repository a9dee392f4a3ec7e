#pragma once

#include "crflat/dense.hpp"

#include <vector>

namespace crflat {

// Gram matrix of <Z,Z'> = sum_A Z^A conj(Z'^A) + (i/2)(Z^{N+1} conj(Z'^0) - Z^0 conj(Z'^{N+1})),
// so that <Z,Z'> = Z'^H J Z. Dimension N+2.
Matrix gram_J(int N);

inline Scalar half_i() { return Scalar(mpq_class(0), mpq_class(1, 2)); }

template <class T>
T form_eval(const std::vector<T>& Z, const std::vector<T>& Zp) {
  if (Z.size() != Zp.size() || Z.size() < 2) throw Error(ErrorKind::Dimension, "form_eval dimension mismatch");
  std::size_t last = Z.size() - 1;
  T s = (Z[last] * Zp[0].conj() - Z[0] * Zp[last].conj()) * half_i();
  for (std::size_t A = 1; A < last; ++A) s += Z[A] * Zp[A].conj();
  return s;
}

template <class T>
T std_inner(const std::vector<T>& Z, const std::vector<T>& Zp) {
  T s = Z[0] * Zp[0].conj();
  for (std::size_t k = 1; k < Z.size(); ++k) s += Z[k] * Zp[k].conj();
  return s;
}

// Zhat = ((i/2) Z^{N+1}, Z^A, -(i/2) Z^0), so <Z,Z'> = <Zhat,Z'>_0.
template <class T>
std::vector<T> hat_reduction(const std::vector<T>& Z) {
  std::vector<T> r = Z;
  std::size_t last = Z.size() - 1;
  r[0] = Z[last] * half_i();
  r[last] = Z[0] * (-half_i());
  return r;
}

struct Membership {
  bool isSU = false;
  bool isGLQ = false;
  Scalar scale;              // c in A^H J A = c J
  double formResidual = 0;   // max |A^H J A - c J|
  double suFormResidual = 0; // max |A^H J A - J|
  double detResidual = 0;    // |det A - 1|
  bool exact = false;
};

struct FrameMatrix {
  Matrix entries;
  Membership residuals;
  bool qFrame = false;
};

Membership membership(const Matrix& A, double tol = 1e-10);
FrameMatrix make_frame_matrix(const Matrix& A, double tol = 1e-10);

// Affine point (w_1..w_{N+1}) mapped through [1 : w] -> A [1 : w], renormalized.
std::vector<Scalar> mobius_action(const Matrix& A, const std::vector<Scalar>& pt);
std::vector<cplx> mobius_action(const Matrix& A, const std::vector<cplx>& pt);
// Same action on a vector of jets; the chart denominator needs a nonzero constant term.
JetVector mobius_action(const Matrix& A, const JetVector& pt);

}  // namespace crflat
