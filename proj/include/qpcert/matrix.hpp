#pragma once

#include <cstddef>
#include <vector>

#include "qpcert/vector.hpp"

namespace qpcert {

/// Small dense row-major matrix. Sized for desk-scale problems; no view
/// machinery, everything copies.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : r_(rows), c_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diag(const std::vector<double>& d);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  const std::vector<double>& data() const { return a_; }

  Vector col(std::size_t j) const;
  Vector row(std::size_t i) const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<double> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Vector matvec(const Matrix& a, const Vector& x);
/// A^T x
Vector matvec_t(const Matrix& a, const Vector& x);
double fro_norm(const Matrix& a);
bool is_symmetric(const Matrix& a, double rel_tol);
double max_abs_diff(const Matrix& a, const Matrix& b);
/// B restricted to the span of the columns of v: v^T B v.
Matrix congruence(const Matrix& b, const Matrix& v);

}  // namespace qpcert
