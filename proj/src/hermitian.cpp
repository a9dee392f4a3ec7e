#include "crflat/hermitian.hpp"

#include <algorithm>
#include <cmath>

namespace crflat {

Matrix gram_J(int N) {
  Matrix J(N + 2, N + 2, Scalar(0));
  for (int A = 1; A <= N; ++A) J(A, A) = Scalar(1);
  J(0, N + 1) = half_i();
  J(N + 1, 0) = -half_i();
  return J;
}

Membership membership(const Matrix& A, double tol) {
  int d = A.rows();
  if (d != A.cols() || d < 2) throw Error(ErrorKind::Dimension, "membership needs a square matrix of size N+2");
  int N = d - 2;
  Membership m;
  m.exact = is_exact(A);
  Scalar det = determinant(A);
  if (m.exact ? det.is_zero() : det.abs() <= tol) throw Error(ErrorKind::Singular, "membership of a singular matrix");
  Matrix J = gram_J(N);
  Matrix G = adjoint(A) * J * A;
  m.scale = G(N + 1, 0) / J(N + 1, 0);
  Matrix dev = G - scale(J, m.scale);
  Matrix devSU = G - J;
  m.formResidual = max_abs(dev);
  m.suFormResidual = max_abs(devSU);
  m.detResidual = (det - Scalar(1)).abs();
  if (m.exact) {
    bool scaled = true;
    for (int i = 0; i < d && scaled; ++i)
      for (int j = 0; j < d; ++j)
        if (!dev(i, j).is_zero()) {
          scaled = false;
          break;
        }
    bool cpos = m.scale.is_real() && sgn(m.scale.exact().re) > 0;
    m.isGLQ = scaled && cpos;
    m.isSU = m.isGLQ && m.scale == Scalar(1) && det == Scalar(1);
  } else {
    cplx c = m.scale.to_complex();
    m.isGLQ = m.formResidual <= tol && std::abs(c.imag()) <= tol && c.real() > tol;
    m.isSU = m.suFormResidual <= tol && m.detResidual <= tol;
  }
  return m;
}

FrameMatrix make_frame_matrix(const Matrix& A, double tol) {
  FrameMatrix f;
  f.entries = A;
  f.residuals = membership(A, tol);
  f.qFrame = f.residuals.isSU;
  return f;
}

std::vector<Scalar> mobius_action(const Matrix& A, const std::vector<Scalar>& pt) {
  int d = A.rows();
  if (static_cast<int>(pt.size()) != d - 1) throw Error(ErrorKind::Dimension, "mobius_action dimension mismatch");
  std::vector<Scalar> h(d, Scalar(0));
  for (int i = 0; i < d; ++i) {
    Scalar s = A(i, 0);
    for (int j = 1; j < d; ++j) s += A(i, j) * pt[j - 1];
    h[i] = s;
  }
  if (h[0].is_zero()) throw Error(ErrorKind::Pole, "point at infinity: chart denominator vanishes");
  std::vector<Scalar> r;
  for (int i = 1; i < d; ++i) r.push_back(h[i] / h[0]);
  return r;
}

std::vector<cplx> mobius_action(const Matrix& A, const std::vector<cplx>& pt) {
  int d = A.rows();
  if (static_cast<int>(pt.size()) != d - 1) throw Error(ErrorKind::Dimension, "mobius_action dimension mismatch");
  std::vector<cplx> h(d);
  for (int i = 0; i < d; ++i) {
    cplx s = A(i, 0).to_complex();
    for (int j = 1; j < d; ++j) s += A(i, j).to_complex() * pt[j - 1];
    h[i] = s;
  }
  if (h[0] == cplx(0.0, 0.0)) throw Error(ErrorKind::Pole, "point at infinity: chart denominator vanishes");
  std::vector<cplx> r;
  for (int i = 1; i < d; ++i) r.push_back(h[i] / h[0]);
  return r;
}

JetVector mobius_action(const Matrix& A, const JetVector& pt) {
  int d = A.rows();
  if (static_cast<int>(pt.size()) != d - 1) throw Error(ErrorKind::Dimension, "mobius_action dimension mismatch");
  std::vector<Jet> h;
  for (int i = 0; i < d; ++i) {
    Jet s = Jet::constant(pt[0].arity(), pt[0].order(), pt[0].chart(), A(i, 0));
    for (int j = 1; j < d; ++j)
      if (!A(i, j).is_zero()) s += pt[j - 1] * A(i, j);
    h.push_back(s);
  }
  if (h[0].constant_term().is_zero()) throw Error(ErrorKind::Pole, "point at infinity: chart denominator vanishes");
  Jet inv = h[0].inverse();
  JetVector r;
  for (int i = 1; i < d; ++i) r.push_back(h[i] * inv);
  return r;
}

}  // namespace crflat
