#include "qpcert/quadratic.hpp"

namespace qpcert {

double eval_quadratic(const QuadraticFunction& q, const Vector& x) {
  double v = 0.5 * quad_value(q.op, x);
  v += dot(q.lin, x);
  v += q.constant;
  return v;
}

Vector gradient(const QuadraticFunction& q, const Vector& x) {
  return apply_operator(q.op, x) + q.lin;
}

}  // namespace qpcert
