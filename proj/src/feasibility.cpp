#include "qpcert/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include "qpcert/constants.hpp"
#include "qpcert/eig.hpp"
#include "qpcert/rng.hpp"

namespace qpcert {

namespace {

double violation(const Problem& p, const Vector& x) {
  double s = 0.0;
  for (const auto& g : p.constraints) {
    const double v = eval_quadratic(g, x);
    if (v > 0.0) s += v * v;
  }
  return s;
}

Vector violation_gradient(const Problem& p, const Vector& x, std::size_t k) {
  Vector grad = Vector::zeros(k);
  for (const auto& g : p.constraints) {
    const double v = eval_quadratic(g, x);
    if (v <= 0.0) continue;
    const Vector gg = gradient(g, x);
    for (std::size_t i = 0; i < k; ++i) grad.ref(i) += 2.0 * v * gg[i];
  }
  return grad;
}

// Deepest point of one convex constraint, or a strictly violated probe when
// the constraint is unbounded below. Used purely as a descent start.
Vector constraint_anchor(const QuadraticFunction& g, std::size_t k) {
  if (g.op.head_dim() == 0) {
    // pure linear head behavior: walk against lin
    const double n2 = norm_sq(g.lin);
    if (n2 <= 1e-30) return Vector::zeros(k);
    return padded((-(g.constant + 1.0) / n2) * g.lin, k);
  }
  const EigResult e = eig_sym(g.op.block);
  const double tol = kNullspaceTol * std::max(1.0, fro_norm(g.op.block));
  const std::size_t n = e.values.size();
  const Vector lin_coords = matvec_t(e.vectors, padded(g.lin, n));
  Vector h = Vector::zeros(n);
  Vector kernel_dir = Vector::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::fabs(e.values[j]) > tol)
      h.ref(j) = -lin_coords[j] / e.values[j];
    else
      kernel_dir.ref(j) = -lin_coords[j];
  }
  Vector x = matvec(e.vectors, h);
  const double kn = norm(kernel_dir);
  if (kn > 1e-12) {
    // Unbounded below along the kernel component; take a few doubling steps.
    const Vector d = matvec(e.vectors, (1.0 / kn) * kernel_dir);
    double t = 1.0;
    for (int it = 0; it < 60 && eval_quadratic(g, x) > -1.0; ++it) {
      x = axpy(t, d, x);
      t *= 2.0;
    }
  }
  return padded(x, k);
}

}  // namespace

namespace {

// Gradient descent on the violation penalty; returns the final point and its
// penalty value.
std::pair<Vector, double> descend_violation(const Problem& p, Vector x,
                                            std::size_t k, int max_iter,
                                            double stop = 1e-30) {
  double v = violation(p, x);
  for (int it = 0; it < max_iter && v > stop; ++it) {
    const Vector grad = violation_gradient(p, x, k);
    const double gn = norm(grad);
    if (gn < 1e-300) break;
    // Cauchy-scale trial step: the directional derivative along -grad/gn is
    // -gn, so t = v/gn targets a full reduction; backtrack from there.
    double t = v / gn;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Vector y = axpy(-t / gn, grad, x);
      const double vy = violation(p, y);
      if (vy < v) {
        x = y;
        v = vy;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {x, v};
}

}  // namespace

std::optional<Vector> find_feasible_point(const Problem& p, std::uint64_t seed) {
  const std::size_t k = std::max<std::size_t>(head_dim(p), 1);
  if (p.constraints.empty()) return Vector::zeros(k);

  std::vector<Vector> starts;
  starts.push_back(Vector::zeros(k));
  for (const auto& g : p.constraints) starts.push_back(constraint_anchor(g, k));
  Rng rng(seed);
  for (int s = 0; s < 8; ++s) {
    Vector x = Vector::zeros(k);
    for (std::size_t i = 0; i < k; ++i) x.ref(i) = rng.uniform(-4.0, 4.0);
    starts.push_back(x);
  }

  Vector best;
  double best_v = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    const auto [x, v] = descend_violation(p, padded(start, k), k, 400);
    if (v < best_v) {
      best_v = v;
      best = x;
    }
    if (best_v <= 1e-22) break;
  }
  if (std::sqrt(best_v) <= 1e-9) return best;
  return std::nullopt;
}

namespace {

// Alternating first-order projections onto the constraint sublevel sets.
// Plain penalty descent zigzags when several constraints are active; the
// per-constraint Newton step handles the coupling. A nonnegative box radius
// adds the projection onto |x|_inf <= radius to the cycle.
Vector pocs_cycles(const Problem& p, Vector y, double box_radius, int max_iter) {
  for (int cycle = 0; cycle < max_iter; ++cycle) {
    double worst = 0.0;
    for (const auto& g : p.constraints) {
      const double v = eval_quadratic(g, y);
      if (v <= 0.0) continue;
      worst = std::max(worst, v);
      const Vector gg = gradient(g, y);
      const double gn2 = norm_sq(gg);
      if (gn2 < 1e-300) continue;
      y = axpy(-v / gn2, gg, y);
    }
    if (box_radius >= 0.0) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double before = y[j];
        if (before > box_radius) y.ref(j) = box_radius;
        if (before < -box_radius) y.ref(j) = -box_radius;
        worst = std::max(worst, std::fabs(before - y[j]));
      }
    }
    if (worst <= 0.0) break;
  }
  return y;
}

}  // namespace

Vector polish_feasible(const Problem& p, const Vector& x, int max_iter) {
  const std::size_t k = std::max<std::size_t>(head_dim(p), x.size());
  Vector y = pocs_cycles(p, padded(x, k), -1.0, max_iter);
  // A final penalty descent mops up any residual violation.
  return descend_violation(p, y, std::max(k, y.size()), 80).first;
}

Vector polish_feasible_box(const Problem& p, const Vector& x, double radius,
                           int max_iter) {
  const std::size_t k = std::max<std::size_t>(head_dim(p), x.size());
  return pocs_cycles(p, padded(x, k), radius, max_iter);
}

Vector restore_to_feasible(const Problem& p, const Vector& anchor, const Vector& y) {
  if (is_feasible(p, y, 0.0)) return y;
  double lo = 0.0, hi = 1.0;  // anchor + s*(y - anchor); s = 0 feasible
  const Vector d = y - anchor;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (is_feasible(p, axpy(mid, d, anchor), 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return axpy(lo, d, anchor);
}

LinearMinResult minimize_linear_over_feasible(const Problem& p, const Vector& w,
                                              const Vector& start, int max_iter) {
  LinearMinResult r;
  Vector x = start;
  r.point = x;
  r.value = dot(w, x);
  const double wn = norm(w);
  if (wn < 1e-15) return r;

  double step = 1.0;
  double last_improvement_value = r.value;
  for (int it = 0; it < max_iter; ++it) {
    const Vector y = restore_to_feasible(p, x, axpy(-step / wn, w, x));
    const double vy = dot(w, y);
    if (vy < r.value - 1e-15 * (1.0 + std::fabs(r.value))) {
      x = y;
      r.value = vy;
      r.point = y;
      step *= 1.7;
    } else {
      step *= 0.4;
      if (step < 1e-12) break;
    }
    if (it == max_iter / 2) last_improvement_value = r.value;
  }
  r.diverging = r.value < last_improvement_value - std::max(1.0, std::fabs(r.value)) * 1e-3 &&
                r.value < -1e5;
  return r;
}

std::vector<Vector> feasible_samples(const Problem& p, const Vector& anchor,
                                     double radius, std::size_t count,
                                     std::uint64_t seed) {
  const std::size_t k = std::max<std::size_t>(head_dim(p), 1);
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  while (out.size() < count) {
    Vector y = Vector::zeros(k);
    for (std::size_t i = 0; i < k; ++i) y.ref(i) = rng.uniform(-radius, radius);
    out.push_back(restore_to_feasible(p, anchor, y));
  }
  return out;
}

}  // namespace qpcert
