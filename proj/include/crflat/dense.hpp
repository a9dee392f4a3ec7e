#pragma once

#include "crflat/error.hpp"
#include "crflat/jet.hpp"
#include "crflat/scalar.hpp"

#include <Eigen/Dense>
#include <vector>

namespace crflat {

template <class T>
class Dense {
 public:
  Dense() = default;
  Dense(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(int j) const {
    std::vector<T> c;
    for (int i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }
  void set_column(int j, const std::vector<T>& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  bool operator==(const Dense& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using Matrix = Dense<Scalar>;
using JetMatrix = Dense<Jet>;

template <class T>
Dense<T> operator*(const Dense<T>& a, const Dense<T>& b) {
  if (a.cols() != b.rows() || a.cols() == 0) throw Error(ErrorKind::Dimension, "matrix product dimension mismatch");
  Dense<T> r(a.rows(), b.cols(), a(0, 0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      T s = a(i, 0) * b(0, j);
      for (int k = 1; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

// Constant matrix acting on a matrix of jets.
JetMatrix operator*(const Matrix& a, const JetMatrix& b);

Matrix identity_matrix(int n);
Matrix adjoint(const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, const Scalar& s);
bool is_exact(const Matrix& a);
double max_abs(const Matrix& a);
Matrix to_float(const Matrix& a);

Eigen::MatrixXcd to_eigen(const Matrix& a);
Matrix from_eigen(const Eigen::MatrixXcd& a);

inline double pivot_size(const Scalar& s) { return s.is_zero() ? -1.0 : s.abs(); }
inline double pivot_size(const Jet& j) {
  Scalar c = j.constant_term();
  return c.is_zero() ? -1.0 : c.abs();
}
inline Scalar unit_like(const Scalar&, const Scalar& v) { return v; }
inline Jet unit_like(const Jet& proto, const Scalar& v) {
  return Jet::constant(proto.arity(), proto.order(), proto.chart(), v);
}
inline Scalar reciprocal(const Scalar& s) { return Scalar(1) / s; }
inline Jet reciprocal(const Jet& j) { return j.inverse(); }

// Gauss-Jordan inverse with partial pivoting (by constant term for jets).
template <class T>
Dense<T> inverse(const Dense<T>& a) {
  int n = a.rows();
  if (n != a.cols()) throw Error(ErrorKind::Dimension, "inverse of a non-square matrix");
  Dense<T> m = a;
  Dense<T> inv(n, n, unit_like(a(0, 0), Scalar(0)));
  for (int i = 0; i < n; ++i) inv(i, i) = unit_like(a(0, 0), Scalar(1));
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    double best = 0.0;
    for (int r = c; r < n; ++r) {
      double s = pivot_size(m(r, c));
      if (s > best) {
        best = s;
        piv = r;
      }
    }
    if (piv < 0) throw Error(ErrorKind::Singular, "singular matrix");
    if (piv != c)
      for (int k = 0; k < n; ++k) {
        std::swap(m(c, k), m(piv, k));
        std::swap(inv(c, k), inv(piv, k));
      }
    T p = reciprocal(m(c, c));
    for (int k = 0; k < n; ++k) {
      m(c, k) = m(c, k) * p;
      inv(c, k) = inv(c, k) * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      T f = m(r, c);
      for (int k = 0; k < n; ++k) {
        m(r, k) -= f * m(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

template <class T>
T determinant(Dense<T> m) {
  int n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::Dimension, "determinant of a non-square matrix");
  T det = unit_like(m(0, 0), Scalar(1));
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    double best = 0.0;
    for (int r = c; r < n; ++r) {
      double s = pivot_size(m(r, c));
      if (s > best) {
        best = s;
        piv = r;
      }
    }
    if (piv < 0) return unit_like(m(0, 0), Scalar(0));
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
      det = det * unit_like(m(0, 0), Scalar(-1));
    }
    det = det * m(c, c);
    T p = reciprocal(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      T f = m(r, c) * p;
      for (int k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

// Exact rank for exact matrices; otherwise the number of singular values above tol * max(sigma_max, 1).
int matrix_rank(const Matrix& a, double tol, std::vector<double>* singular_values = nullptr);
std::vector<double> singular_values(const Matrix& a);

// Solves the least-squares problem min |A x - b| column by column; exact normal equations in exact mode.
Matrix least_squares(const Matrix& a, const Matrix& b);

}  // namespace crflat
