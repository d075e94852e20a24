#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpcert/problem.hpp"
#include "qpcert/recession.hpp"

namespace qpcert {

/// Output of the single-constraint solver. The case tag records how the
/// point was produced: OnBoundary for a dual crossing or a curved kernel
/// move onto the boundary, RetractedFrom* for the linear kernel-ray move
/// from a strictly interior/exterior multiplier point, Interior when the
/// unconstrained minimizer is already strictly feasible at multiplier 0.
struct Solution {
  Vector point;
  double value = 0.0;
  double multiplier = 0.0;
  enum class Case { OnBoundary, RetractedFromInterior, RetractedFromExterior, Interior };
  Case case_tag = Case::OnBoundary;
  double kkt_residual = 0.0;
  std::optional<Vector> retraction_ray;
  std::optional<double> step;
};

const char* to_string(Solution::Case c);

/// Smallest lambda >= 0 with T + lambda*T1 positive semidefinite (block and
/// tail). Exact emptiness test on ker(T1) first, then doubling + bisection.
/// Throws NoPsdShift when no shift exists.
double lambda_bar(const Operator& t, const Operator& t1);

/// Exact unconstrained quadratic minimization via the eigendecomposition
/// pseudo-solve.
struct UnconstrainedMin {
  bool bounded = false;
  double value = 0.0;
  Vector point;  // min-norm stationary point when bounded
  Vector ray;    // descent direction when unbounded: q(t * ray) -> -inf
};

UnconstrainedMin unconstrained_argmin(const QuadraticFunction& q);

/// min f over { g1 <= 0 }: dual maximization over the psd multiplier range,
/// then a boundary move through the kernel of T + lambda*T1 in the hard
/// case. Throws NoSlaterPoint / NotBoundedBelow / HardCaseNoRay.
Solution solve_single_constraint(const Problem& p);

/// Linear kernel-ray restoration onto { g1 = 0 }. Preconditions: T1 vbar = 0
/// within tolerance, <c1, vbar> < -1e-10.
struct Retraction {
  Vector point;
  double step = 0.0;
};
Retraction retract_to_boundary(const Vector& x_star, const Vector& v_bar,
                               const QuadraticFunction& g1);

/// Brute-force grid scan, the independent ground truth for desk-scale
/// instances. Exhaustive over the head for dimension <= 6; beyond that only
/// the first six coordinates are scanned and `exhaustive` is false.
struct OracleResult {
  double inf_estimate = 0.0;   // +inf when no feasible grid point exists
  std::optional<Vector> argmin;
  double radius = 0.0;
  double grid_step = 0.0;
  bool attained_in_box = false;
  bool exhaustive = true;
};

OracleResult oracle_minimize(const Problem& p, double radius, double grid_step);

/// Coarse-to-fine refinement: full scan, then shrinking boxes around the
/// best separated candidates. Box clamped to the original radius so the
/// attained_in_box flag keeps its meaning.
OracleResult oracle_refined(const Problem& p, double radius, double coarse_step,
                            int rounds = 8, int keep = 4);

/// Minimal-norm element of { x in F : f(x) <= a } on the oracle grid, ties
/// broken lexicographically. Diagnostic only. Throws EmptyLevelSet.
Vector minimal_norm_level_point(const Problem& p, double a, double radius,
                                double grid_step);

/// Descent-ray certificate scan over the recession cone: a ray on which the
/// objective provably decreases without bound from a feasible base point.
struct UnboundedCertificate {
  Vector ray;
  Vector base;
  std::string reason;
};
std::optional<UnboundedCertificate> unbounded_ray_scan(const Problem& p,
                                                       const ConeAnalysis& ca,
                                                       const Vector& feasible);

/// Re-check an unboundedness certificate by direct evaluation: the base
/// stays feasible along the ray and the values fall monotonically.
bool verify_unbounded(const Problem& p, const Vector& base, const Vector& ray);

}  // namespace qpcert
