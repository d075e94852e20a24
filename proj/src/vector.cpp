#include "qpcert/vector.hpp"

#include <algorithm>
#include <cmath>

namespace qpcert {

Vector Vector::unit(std::size_t d, std::size_t i) {
  Vector v = zeros(d);
  v.ref(i) = 1.0;
  return v;
}

double dot(const Vector& a, const Vector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Vector& a) { return dot(a, a); }

double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

double inf_norm(const Vector& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector r = Vector::zeros(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r.ref(i) = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector r = Vector::zeros(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r.ref(i) = a[i] - b[i];
  return r;
}

Vector operator*(double s, const Vector& a) {
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.ref(i) *= s;
  return r;
}

Vector axpy(double a, const Vector& x, const Vector& y) {
  Vector r = Vector::zeros(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r.ref(i) = a * x[i] + y[i];
  return r;
}

Vector padded(const Vector& a, std::size_t d) {
  Vector r = a;
  if (r.size() < d) r.coords().resize(d, 0.0);
  return r;
}

bool all_finite(const Vector& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

double max_abs_diff(const Vector& a, const Vector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

std::size_t support_dim(const Vector& a, double tol) {
  std::size_t d = a.size();
  while (d > 0 && std::fabs(a[d - 1]) <= tol) --d;
  return d;
}

}  // namespace qpcert
