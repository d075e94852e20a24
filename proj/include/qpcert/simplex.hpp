#pragma once

#include <vector>

#include "qpcert/matrix.hpp"
#include "qpcert/vector.hpp"

namespace qpcert {

/// Dense tableau simplex for the desk-scale linear programs that show up in
/// the cone analysis (dimensions well under 64).
struct LpResult {
  enum class Status { Optimal, Unbounded };
  Status status = Status::Optimal;
  double value = 0.0;
  Vector x;
};

/// max c'x  s.t.  A x <= b, x >= 0, with b >= 0 (slack basis start).
/// Bland's rule, so degenerate rows cannot cycle.
LpResult simplex_max(const Vector& c, const Matrix& a, const Vector& b);

/// max c'w over free w subject to A w <= b (b >= 0), via the w+ - w- split.
LpResult lp_max_free(const Vector& c, const Matrix& a, const Vector& b);

}  // namespace qpcert
