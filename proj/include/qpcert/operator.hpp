#pragma once

#include "qpcert/matrix.hpp"
#include "qpcert/vector.hpp"

namespace qpcert {

/// Continuous self-adjoint operator as a dense symmetric k x k head block
/// plus a scalar multiple of the identity on coordinates beyond k. This
/// shape is closed under the linear combinations the analysis needs and
/// keeps compactness and spectral questions decidable.
struct Operator {
  Matrix block;      // k x k, symmetric
  double tail = 0.0; // acts as tail * I on coordinates > k

  std::size_t head_dim() const { return block.rows(); }

  static Operator zero(std::size_t k = 0) { return {Matrix(k, k), 0.0}; }
  static Operator scaled_identity(double s) { return {Matrix(0, 0), s}; }
  static Operator diagonal(const std::vector<double>& d, double tail = 0.0) {
    return {Matrix::diag(d), tail};
  }
};

/// (block * x_head)_i for i <= k, tail * x_i for i > k; result dimension
/// max(k, dim x).
Vector apply_operator(const Operator& t, const Vector& x);

/// <x, T x>, including the tail contribution.
double quad_value(const Operator& t, const Vector& x);

/// Grow the head block to K, writing the tail value on the new diagonal
/// entries. Semantically the identity on the represented operator.
Operator padded(const Operator& t, std::size_t k);

/// ||block||_F <= kZeroBlockTol and tail == 0.
bool is_zero_operator(const Operator& t);

/// a*S + b*T, heads aligned to the larger block.
Operator combine(double a, const Operator& s, double b, const Operator& t);

double operator_scale(const Operator& t);

}  // namespace qpcert
