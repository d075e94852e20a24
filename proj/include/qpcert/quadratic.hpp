#pragma once

#include "qpcert/operator.hpp"
#include "qpcert/vector.hpp"

namespace qpcert {

/// q(x) = 1/2 <x, op x> + <lin, x> + constant.
struct QuadraticFunction {
  Operator op;
  Vector lin;
  double constant = 0.0;
};

/// Fixed evaluation order (quadratic term, then linear, then constant) so
/// repeated runs produce bit-identical reports.
double eval_quadratic(const QuadraticFunction& q, const Vector& x);

/// op x + lin.
Vector gradient(const QuadraticFunction& q, const Vector& x);

}  // namespace qpcert
