#include "qpcert/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qpcert {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diag(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::col(std::size_t j) const {
  Vector v = Vector::zeros(r_);
  for (std::size_t i = 0; i < r_; ++i) v.ref(i) = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  Vector v = Vector::zeros(c_);
  for (std::size_t j = 0; j < c_; ++j) v.ref(j) = (*this)(i, j);
  return v;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

Vector matvec(const Matrix& a, const Vector& x) {
  Vector r = Vector::zeros(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    r.ref(i) = s;
  }
  return r;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
  Vector r = Vector::zeros(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * x[i];
    r.ref(j) = s;
  }
  return r;
}

double fro_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, fro_norm(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
  return true;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  const std::size_t rows = std::max(a.rows(), b.rows());
  const std::size_t cols = std::max(a.cols(), b.cols());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double av = (i < a.rows() && j < a.cols()) ? a(i, j) : 0.0;
      const double bv = (i < b.rows() && j < b.cols()) ? b(i, j) : 0.0;
      m = std::max(m, std::fabs(av - bv));
    }
  return m;
}

Matrix congruence(const Matrix& b, const Matrix& v) {
  return matmul(transpose(v), matmul(b, v));
}

}  // namespace qpcert
