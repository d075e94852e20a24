#include "qpcert/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "qpcert/errors.hpp"

namespace qpcert {

namespace {
constexpr double kLpEps = 1e-11;
}

LpResult simplex_max(const Vector& c, const Matrix& a, const Vector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0.0) throw PreconditionViolation("simplex_max: negative right-hand side");

  // Tableau: m rows of [A | I | b], then the objective row [-c | 0 | 0].
  Matrix t(m + 1, n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
    t(i, n + i) = 1.0;
    t(i, n + m) = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) t(m, j) = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  const std::size_t cols = n + m;
  for (;;) {
    // Bland: entering = lowest index with a negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (t(m, j) < -kLpEps) {
        enter = j;
        break;
      }
    if (enter == cols) break;  // optimal

    // Leaving: min ratio, ties to the lowest basis index.
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= kLpEps) continue;
      const double ratio = t(i, n + m) / t(i, enter);
      if (ratio < best - kLpEps ||
          (ratio < best + kLpEps && (leave == m || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) {
      LpResult r;
      r.status = LpResult::Status::Unbounded;
      return r;
    }

    const double piv = t(leave, enter);
    for (std::size_t j = 0; j <= cols; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  LpResult r;
  r.status = LpResult::Status::Optimal;
  r.x = Vector::zeros(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) r.x.ref(basis[i]) = t(i, n + m);
  r.value = dot(c, r.x);
  return r;
}

LpResult lp_max_free(const Vector& c, const Matrix& a, const Vector& b) {
  const std::size_t n = a.cols();
  Vector c2 = Vector::zeros(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    c2.ref(j) = c[j];
    c2.ref(n + j) = -c[j];
  }
  Matrix a2(a.rows(), 2 * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a2(i, j) = a(i, j);
      a2(i, n + j) = -a(i, j);
    }
  LpResult split = simplex_max(c2, a2, b);
  LpResult r;
  r.status = split.status;
  r.value = split.value;
  if (split.status == LpResult::Status::Optimal) {
    r.x = Vector::zeros(n);
    for (std::size_t j = 0; j < n; ++j) r.x.ref(j) = split.x[j] - split.x[n + j];
  }
  return r;
}

}  // namespace qpcert
