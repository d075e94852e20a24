#include "qpcert/operator.hpp"

#include <algorithm>
#include <cmath>

#include "qpcert/constants.hpp"

namespace qpcert {

Vector apply_operator(const Operator& t, const Vector& x) {
  const std::size_t k = t.head_dim();
  const std::size_t d = std::max(k, x.size());
  Vector r = Vector::zeros(d);
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += t.block(i, j) * x[j];
    r.ref(i) = s;
  }
  for (std::size_t i = k; i < d; ++i) r.ref(i) = t.tail * x[i];
  return r;
}

double quad_value(const Operator& t, const Vector& x) {
  const std::size_t k = t.head_dim();
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) row += t.block(i, j) * x[j];
    s += x[i] * row;
  }
  for (std::size_t i = k; i < x.size(); ++i) s += t.tail * x[i] * x[i];
  return s;
}

Operator padded(const Operator& t, std::size_t k) {
  if (t.head_dim() >= k) return t;
  Operator r{Matrix(k, k), t.tail};
  for (std::size_t i = 0; i < t.head_dim(); ++i)
    for (std::size_t j = 0; j < t.head_dim(); ++j) r.block(i, j) = t.block(i, j);
  for (std::size_t i = t.head_dim(); i < k; ++i) r.block(i, i) = t.tail;
  return r;
}

bool is_zero_operator(const Operator& t) {
  return fro_norm(t.block) <= kZeroBlockTol && t.tail == 0.0;
}

Operator combine(double a, const Operator& s, double b, const Operator& t) {
  const std::size_t k = std::max(s.head_dim(), t.head_dim());
  const Operator sp = padded(s, k);
  const Operator tp = padded(t, k);
  Operator r{Matrix(k, k), a * sp.tail + b * tp.tail};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r.block(i, j) = a * sp.block(i, j) + b * tp.block(i, j);
  return r;
}

double operator_scale(const Operator& t) {
  return std::max(1.0, fro_norm(t.block) + std::fabs(t.tail));
}

}  // namespace qpcert
