#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qpcert {

/// Finitely supported coordinate sequence: entry i reads coords[i] for
/// i < size() and exactly zero beyond. The same object serves as a point
/// of R^n and as the head of a sequence-space element with zero tail.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords) : c_(std::move(coords)) {}
  Vector(std::initializer_list<double> coords) : c_(coords) {}

  static Vector zeros(std::size_t d) { return Vector(std::vector<double>(d, 0.0)); }
  static Vector unit(std::size_t d, std::size_t i);

  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  double& ref(std::size_t i) { return c_.at(i); }
  const std::vector<double>& coords() const { return c_; }
  std::vector<double>& coords() { return c_; }

 private:
  std::vector<double> c_;
};

double dot(const Vector& a, const Vector& b);
double norm_sq(const Vector& a);
double norm(const Vector& a);
double inf_norm(const Vector& a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);
/// a*x + y
Vector axpy(double a, const Vector& x, const Vector& y);
Vector padded(const Vector& a, std::size_t d);
bool all_finite(const Vector& a);
/// max |a_i - b_i| over the union of supports
double max_abs_diff(const Vector& a, const Vector& b);
/// Index of the last entry with |a_i| > tol, plus one (0 for ~zero vectors).
std::size_t support_dim(const Vector& a, double tol = 0.0);

}  // namespace qpcert
