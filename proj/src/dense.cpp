#include "crflat/dense.hpp"

#include <algorithm>

namespace crflat {

JetMatrix operator*(const Matrix& a, const JetMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Dimension, "matrix product dimension mismatch");
  JetMatrix r(a.rows(), b.cols(), b(0, 0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Jet s = b(0, j) * a(i, 0);
      for (int k = 1; k < a.cols(); ++k)
        if (!a(i, k).is_zero()) s += b(k, j) * a(i, k);
      r(i, j) = s;
    }
  return r;
}

Matrix identity_matrix(int n) {
  Matrix m(n, n, Scalar(0));
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix adjoint(const Matrix& a) {
  Matrix r(a.cols(), a.rows(), Scalar(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j).conj();
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
  return r;
}

Matrix scale(const Matrix& a, const Scalar& s) {
  Matrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) *= s;
  return r;
}

bool is_exact(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_exact()) return false;
  return true;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, a(i, j).abs());
  return m;
}

Matrix to_float(const Matrix& a) {
  Matrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).to_float();
  return r;
}

Eigen::MatrixXcd to_eigen(const Matrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_complex();
  return m;
}

Matrix from_eigen(const Eigen::MatrixXcd& a) {
  Matrix m(static_cast<int>(a.rows()), static_cast<int>(a.cols()), Scalar(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = Scalar(a(i, j));
  return m;
}

std::vector<double> singular_values(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

int matrix_rank(const Matrix& a, double tol, std::vector<double>* sv) {
  std::vector<double> s = singular_values(a);
  if (sv) *sv = s;
  if (is_exact(a)) {
    Matrix m = a;
    int rank = 0;
    for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
      int piv = -1;
      for (int r = rank; r < m.rows(); ++r)
        if (!m(r, c).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      for (int k = 0; k < m.cols(); ++k) std::swap(m(rank, k), m(piv, k));
      Scalar p = Scalar(1) / m(rank, c);
      for (int r = rank + 1; r < m.rows(); ++r) {
        if (m(r, c).is_zero()) continue;
        Scalar f = m(r, c) * p;
        for (int k = c; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
      }
      ++rank;
    }
    return rank;
  }
  double smax = s.empty() ? 0.0 : s.front();
  double thresh = tol * std::max(smax, 1.0);
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > thresh; }));
}

Matrix least_squares(const Matrix& a, const Matrix& b) {
  if (is_exact(a) && is_exact(b)) {
    Matrix ah = adjoint(a);
    return inverse(ah * a) * (ah * b);
  }
  Eigen::MatrixXcd x = to_eigen(a).completeOrthogonalDecomposition().solve(to_eigen(b));
  return from_eigen(x);
}

}  // namespace crflat
