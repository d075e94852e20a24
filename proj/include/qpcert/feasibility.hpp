#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpcert/problem.hpp"

namespace qpcert {

/// Search for a point of F. The violation penalty sum_i max(g_i, 0)^2 is
/// convex and C^1, so gradient descent from a handful of deterministic
/// starts reaches its global infimum at desk scale. Returns nullopt when
/// the residual stays positive.
std::optional<Vector> find_feasible_point(const Problem& p,
                                          std::uint64_t seed = 0x5EED);

/// Pull y back into F along the segment from a feasible anchor (largest
/// feasible step by bisection; the feasible section of the segment is an
/// interval because F is convex).
Vector restore_to_feasible(const Problem& p, const Vector& anchor, const Vector& y);

/// Descend the violation penalty from x; removes the slack-level
/// infeasibility of grid points without moving feasible ones.
Vector polish_feasible(const Problem& p, const Vector& x, int max_iter = 200);

/// Same, but alternating with the projection onto the box |x|_inf <= radius,
/// so the result lies in F intersected with the box (both convex).
Vector polish_feasible_box(const Problem& p, const Vector& x, double radius,
                           int max_iter = 400);

struct LinearMinResult {
  double value = 0.0;  // best <w, x> found over F
  Vector point;
  bool diverging = false;  // value still falling at the iteration cap
};

/// Projected descent for min <w, x> over F, started from a feasible point.
LinearMinResult minimize_linear_over_feasible(const Problem& p, const Vector& w,
                                              const Vector& start,
                                              int max_iter = 400);

/// Deterministic sample of feasible points within the given radius
/// (rejection plus restoration toward the anchor).
std::vector<Vector> feasible_samples(const Problem& p, const Vector& anchor,
                                     double radius, std::size_t count,
                                     std::uint64_t seed);

}  // namespace qpcert
